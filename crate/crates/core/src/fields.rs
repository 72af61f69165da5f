//! Left-invariant vector fields as per-level symbols.
//!
//! A left-invariant field `X` maps `t^l_{mn}` to `sum_k t^l_{mk} A_{kn}`, so on
//! each level it is a `(2l+1) x (2l+1)` matrix acting on the second index
//! only. Composition of operators corresponds to the matrix product in the
//! same order.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::error::Result;
use crate::group::{exp_curve, group_mul, AlgebraElement, Complex, GroupPoint};
use crate::poly::{Poly, Var};
use crate::repr::{matrix_coeff, rep_matrix, CoeffMatrix, RepLevel, Weight};

/// The six named fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasicField {
    Y1,
    Y2,
    Y3,
    DPlus,
    DMinus,
    DZero,
}

impl BasicField {
    pub const ALL: [BasicField; 6] =
        [BasicField::Y1, BasicField::Y2, BasicField::Y3, BasicField::DPlus, BasicField::DMinus, BasicField::DZero];

    pub fn element(self) -> AlgebraElement {
        match self {
            BasicField::Y1 => AlgebraElement::Y1,
            BasicField::Y2 => AlgebraElement::Y2,
            BasicField::Y3 => AlgebraElement::Y3,
            BasicField::DPlus => AlgebraElement::D_PLUS,
            BasicField::DMinus => AlgebraElement::D_MINUS,
            BasicField::DZero => AlgebraElement::D_ZERO,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BasicField::Y1 => "y1",
            BasicField::Y2 => "y2",
            BasicField::Y3 => "y3",
            BasicField::DPlus => "dplus",
            BasicField::DMinus => "dminus",
            BasicField::DZero => "dzero",
        }
    }

    /// Unicode label used in rendered formulas.
    pub fn label(self) -> &'static str {
        match self {
            BasicField::Y1 => "Y₁",
            BasicField::Y2 => "Y₂",
            BasicField::Y3 => "Y₃",
            BasicField::DPlus => "∂₊",
            BasicField::DMinus => "∂₋",
            BasicField::DZero => "∂₀",
        }
    }
}

impl fmt::Display for BasicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BasicField {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        BasicField::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown field '{s}' (expected one of y1, y2, y3, dplus, dminus, dzero)"))
    }
}

/// Per-level matrix of a first-order left-invariant operator; entry
/// `(n', n)` is the coefficient of `t_{m n'}` in the image of `t_{mn}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Symbol {
    pub level: RepLevel,
    pub entries: DMatrix<Complex>,
}

impl Symbol {
    pub fn zeros(level: RepLevel) -> Self {
        Symbol { level, entries: DMatrix::zeros(level.dim(), level.dim()) }
    }

    pub fn identity(level: RepLevel) -> Self {
        Symbol { level, entries: DMatrix::identity(level.dim(), level.dim()) }
    }

    /// Coefficient at `(m, n')` of the image is `sum_n entries[n', n] c[m, n]`.
    pub fn apply(&self, c: &CoeffMatrix) -> CoeffMatrix {
        debug_assert_eq!(self.level, c.level);
        CoeffMatrix { level: c.level, entries: &c.entries * self.entries.transpose() }
    }

    /// Symbol of the composite operator `self . other`.
    pub fn compose(&self, other: &Symbol) -> Symbol {
        Symbol { level: self.level, entries: &self.entries * &other.entries }
    }

    pub fn commutator(&self, other: &Symbol) -> Symbol {
        Symbol { level: self.level, entries: &self.entries * &other.entries - &other.entries * &self.entries }
    }

    pub fn max_abs_diff(&self, other: &Symbol) -> f64 {
        (&self.entries - &other.entries).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

fn ladder_weights(n: Weight) -> (f64, f64) {
    // sqrt((l - n)(l + n + 1)) and sqrt((l + n)(l - n + 1))
    let lm = f64::from(n.l_minus());
    let lp = f64::from(n.l_plus());
    ((lm * (lp + 1.0)).sqrt(), (lp * (lm + 1.0)).sqrt())
}

/// Symbol of one of the named fields, built from the explicit ladder actions.
pub fn ladder_symbol(field: BasicField, ell: RepLevel) -> Symbol {
    let mut s = Symbol::zeros(ell);
    let dim = ell.dim();
    for n in ell.weights() {
        let j = n.index();
        let nv = n.value().value();
        let (up, down) = ladder_weights(n);
        let mut put = |row: usize, v: Complex| s.entries[(row, j)] += v;
        match field {
            BasicField::Y1 => {
                // sqrt(..)/(-2i) = (i/2) sqrt(..)
                if j + 1 < dim {
                    put(j + 1, Complex::new(0.0, up / 2.0));
                }
                if j > 0 {
                    put(j - 1, Complex::new(0.0, down / 2.0));
                }
            }
            BasicField::Y2 => {
                if j + 1 < dim {
                    put(j + 1, Complex::from(up / 2.0));
                }
                if j > 0 {
                    put(j - 1, Complex::from(-down / 2.0));
                }
            }
            BasicField::Y3 => put(j, Complex::new(0.0, -nv)),
            BasicField::DPlus => {
                if j + 1 < dim {
                    put(j + 1, Complex::from(-up));
                }
            }
            BasicField::DMinus => {
                if j > 0 {
                    put(j - 1, Complex::from(-down));
                }
            }
            BasicField::DZero => put(j, Complex::from(nv)),
        }
    }
    s
}

/// Symbol of an arbitrary complex combination `c1 Y1 + c2 Y2 + c3 Y3`.
pub fn algebra_symbol(x: &AlgebraElement, ell: RepLevel) -> Symbol {
    let frame = [BasicField::Y1, BasicField::Y2, BasicField::Y3];
    let mut entries = DMatrix::zeros(ell.dim(), ell.dim());
    for (coef, f) in x.c.iter().zip(frame) {
        if *coef != Complex::from(0.0) {
            entries += ladder_symbol(f, ell).entries * *coef;
        }
    }
    Symbol { level: ell, entries }
}

/// Laplace-Beltrami `-(Y1^2 + Y2^2 + Y3^2)`, which is `l(l+1)` on level `l`.
pub fn laplace_symbol(ell: RepLevel) -> Symbol {
    let mut s = Symbol::identity(ell);
    s.entries *= Complex::from(ell.casimir());
    s
}

/// `(X t_{mn})(x)` evaluated through the symbol.
pub fn symbol_action_at(x_elem: &AlgebraElement, ell: RepLevel, m: Weight, n: Weight, x: &GroupPoint) -> Complex {
    let t = rep_matrix(ell, x);
    let a = algebra_symbol(x_elem, ell);
    ell.weights().map(|k| t.get(m, k) * a.entries[(k.index(), n.index())]).sum()
}

/// Finite-difference step for [`derivative_oracle`].
pub const FD_STEP: f64 = 1e-5;

/// Central difference of `t -> t^l_{mn}(x . exp(t X))` at `t = 0`, extended
/// complex-linearly for complex `X`.
pub fn derivative_oracle(x_elem: &AlgebraElement, ell: RepLevel, m: Weight, n: Weight, x: &GroupPoint) -> Result<Complex> {
    let (re, im) = x_elem.split();
    let along = |y: &AlgebraElement| -> Result<Complex> {
        if y.norm() == 0.0 {
            return Ok(Complex::from(0.0));
        }
        let fwd = group_mul(x, &exp_curve(y, FD_STEP)?);
        let bwd = group_mul(x, &exp_curve(y, -FD_STEP)?);
        Ok((matrix_coeff(ell, m, n, &fwd)? - matrix_coeff(ell, m, n, &bwd)?) / (2.0 * FD_STEP))
    };
    Ok(along(&re)? + Complex::new(0.0, 1.0) * along(&im)?)
}

/// The CR field `L = -z2 d/d(conj z1) + z1 d/d(conj z2)` applied to a
/// polynomial by Wirtinger differentiation.
pub fn cr_field(p: &Poly) -> Poly {
    let z1 = Poly::var(Var::Z1);
    let z2 = Poly::var(Var::Z2);
    &(&z1 * &p.derivative(Var::Z2Bar)) - &(&z2 * &p.derivative(Var::Z1Bar))
}
