//! Left-invariant involutive structures of corank 1 and 2 and the operator
//! `d'` they induce on forms of each bidegree.
//!
//! `d'` is assembled directly from the structure constants; dual covectors
//! are never materialized. Each entry of a [`DPrimeOperator`] is a first-order
//! scalar operator `u -> X u + c u`.

mod frames;
mod presets;

use std::fmt;

use serde::Serialize;

pub use frames::{
    classify_span, corank1_constants, corank1_residual, corank2_constants, corank2_residual, Classification, Corank1Frame, Corank2Frame,
    StructureConstants1, StructureConstants2, FRAME_TOL,
};
pub use presets::{preset, ConstantsVariant, Corank1Preset, Corank2Preset, Discrepancy, PresetInfo, PresetRegistry, StructurePreset};

use crate::error::{Error, Result};
use crate::fields::BasicField;
use crate::group::{AlgebraElement, Complex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Bidegree {
    pub p: u8,
    pub q: u8,
}

impl Bidegree {
    pub const fn new(p: u8, q: u8) -> Self {
        Bidegree { p, q }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// `u -> field(u) + constant * u`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalarOp {
    pub field: AlgebraElement,
    pub constant: Complex,
}

impl ScalarOp {
    pub fn new(field: AlgebraElement, constant: Complex) -> Self {
        ScalarOp { field, constant }
    }

    pub fn field(field: AlgebraElement) -> Self {
        ScalarOp::new(field, Complex::from(0.0))
    }

    pub fn constant(constant: Complex) -> Self {
        ScalarOp::new(AlgebraElement::ZERO, constant)
    }
}

/// `d'` in one bidegree, as a `rows x cols` matrix of scalar operators acting
/// on the coefficient functions of a form.
#[derive(Clone, Debug, PartialEq)]
pub struct DPrimeOperator {
    pub corank: u8,
    pub bidegree: Bidegree,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<ScalarOp>,
}

impl DPrimeOperator {
    fn from_rows(corank: u8, bidegree: Bidegree, rows: Vec<Vec<ScalarOp>>) -> Self {
        let cols = rows[0].len();
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        DPrimeOperator { corank, bidegree, rows: rows.len(), cols, entries: rows.into_iter().flatten().collect() }
    }

    pub fn entry(&self, row: usize, col: usize) -> &ScalarOp {
        &self.entries[row * self.cols + col]
    }

    /// Human-readable formula, e.g. `d′₍₁,₀₎(u₁,u₂) = (−∂₋u₁ − 2u₂, −∂₋u₂)`.
    pub fn render(&self) -> String {
        let var = |j: usize| {
            if self.cols == 1 {
                "u".to_string()
            } else {
                format!("u{}", subscript(j as u32 + 1))
            }
        };
        let args = (0..self.cols).map(var).collect::<Vec<_>>().join(",");
        let rows: Vec<String> = (0..self.rows)
            .map(|r| {
                let mut terms = Vec::new();
                for c in 0..self.cols {
                    let op = self.entry(r, c);
                    if op.field.norm() > 0.0 {
                        let (coef, label) = field_label(&op.field);
                        terms.push((coef, format!("{label}{}", var(c))));
                    }
                    if op.constant.norm() > 0.0 {
                        terms.push((op.constant, var(c)));
                    }
                }
                join_terms(&terms)
            })
            .collect();
        let name = format!("d′₍{},{}₎", subscript(self.bidegree.p.into()), subscript(self.bidegree.q.into()));
        let body = if rows.len() == 1 { rows[0].clone() } else { format!("({})", rows.join(", ")) };
        format!("{name}({args}) = {body}")
    }
}

fn subscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string().chars().map(|d| DIGITS[d.to_digit(10).unwrap() as usize]).collect()
}

/// Writes `x` as `s * named` when possible.
fn field_label(x: &AlgebraElement) -> (Complex, String) {
    for f in [BasicField::DMinus, BasicField::DPlus, BasicField::DZero, BasicField::Y1, BasicField::Y2, BasicField::Y3] {
        let e = f.element();
        let num: Complex = x.c.iter().zip(e.c.iter()).map(|(a, b)| a * b.conj()).sum();
        let s = num / (e.norm() * e.norm());
        if (*x - s * e).norm() <= 1e-12 * x.norm().max(1.0) {
            return (s, f.label().to_string());
        }
    }
    (Complex::from(1.0), format!("[{x}]"))
}

fn fmt_real(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

fn round_near_integer(v: f64) -> f64 {
    let r = v.round();
    if (v - r).abs() < 1e-12 {
        r
    } else {
        v
    }
}

fn join_terms(terms: &[(Complex, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (coef, body)) in terms.iter().enumerate() {
        let re = round_near_integer(coef.re);
        let im = round_near_integer(coef.im);
        let (negative, mag) = if im == 0.0 {
            let a = re.abs();
            (re < 0.0, if a == 1.0 { String::new() } else { fmt_real(a) })
        } else if re == 0.0 {
            let a = im.abs();
            (im < 0.0, if a == 1.0 { "i".into() } else { format!("{}i", fmt_real(a)) })
        } else {
            let sign = if im < 0.0 { "−" } else { "+" };
            (false, format!("({}{sign}{}i)", fmt_real(re), fmt_real(im.abs())))
        };
        match (i, negative) {
            (0, true) => out.push('−'),
            (0, false) => {}
            (_, true) => out.push_str(" − "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&mag);
        out.push_str(body);
    }
    out
}

/// A frame of either corank.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Frame {
    Corank1(Corank1Frame),
    Corank2(Corank2Frame),
}

impl Frame {
    pub fn corank(&self) -> u8 {
        match self {
            Frame::Corank1(_) => 1,
            Frame::Corank2(_) => 2,
        }
    }

    /// Basis of the involutive subalgebra.
    pub fn subalgebra(&self) -> Vec<AlgebraElement> {
        match self {
            Frame::Corank1(f) => vec![f.l1, f.l2],
            Frame::Corank2(f) => vec![f.l],
        }
    }

    pub fn classify(&self) -> Classification {
        classify_span(&self.subalgebra())
    }

    pub fn constants(&self) -> Result<Constants> {
        Ok(match self {
            Frame::Corank1(f) => Constants::Corank1(corank1_constants(f)?),
            Frame::Corank2(f) => Constants::Corank2(corank2_constants(f)?),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Constants {
    Corank1(StructureConstants1),
    Corank2(StructureConstants2),
}

impl Constants {
    pub fn corank(&self) -> u8 {
        match self {
            Constants::Corank1(_) => 1,
            Constants::Corank2(_) => 2,
        }
    }

    /// Named entries, e.g. `("b2,3", value)`, in table order.
    pub fn entries(&self) -> Vec<(String, Complex)> {
        let (a, b): (&[Complex], &[[Complex; 3]; 2]) = match self {
            Constants::Corank1(k) => (&k.a, &k.b),
            Constants::Corank2(k) => (&k.a, &k.b),
        };
        let mut out: Vec<(String, Complex)> = a.iter().enumerate().map(|(j, v)| (format!("a{}", j + 1), *v)).collect();
        for (j, row) in b.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                out.push((format!("b{},{}", j + 1, k + 1), *v));
            }
        }
        out
    }
}

/// A frame together with the constants used to assemble `d'`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Structure {
    frame: Frame,
    constants: Constants,
}

impl Structure {
    pub fn new(frame: Frame, constants: Constants) -> Result<Self> {
        if frame.corank() != constants.corank() {
            return Err(Error::WrongCorank { expected: frame.corank(), found: constants.corank() });
        }
        Ok(Structure { frame, constants })
    }

    /// Uses constants recomputed from the brackets of the frame.
    pub fn from_frame(frame: Frame) -> Result<Self> {
        Structure::new(frame, frame.constants()?)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn constants(&self) -> &Constants {
        &self.constants
    }

    pub fn corank(&self) -> u8 {
        self.frame.corank()
    }

    /// Number of coefficient functions of a `(p, q)` form.
    pub fn form_dim(&self, b: Bidegree) -> usize {
        let (top_p, top_q) = self.top_degrees();
        if b.p > top_p || b.q > top_q {
            return 0;
        }
        binomial(top_p, b.p) * binomial(top_q, b.q)
    }

    /// `(dim of complement, dim of subalgebra)`.
    pub fn top_degrees(&self) -> (u8, u8) {
        match self.corank() {
            1 => (1, 2),
            _ => (2, 1),
        }
    }

    /// Bidegrees carrying a nonzero `d'`, in ascending order.
    pub fn nontrivial_bidegrees(&self) -> Vec<Bidegree> {
        let (top_p, top_q) = self.top_degrees();
        (0..=top_p).flat_map(|p| (0..top_q).map(move |q| Bidegree::new(p, q))).collect()
    }

    /// `d'` on `(p, q)` forms.
    pub fn dprime(&self, b: Bidegree) -> Result<DPrimeOperator> {
        let op = ScalarOp::new;
        let f = ScalarOp::field;
        let k = ScalarOp::constant;
        let rows = match (&self.frame, &self.constants, (b.p, b.q)) {
            (Frame::Corank1(fr), Constants::Corank1(_), (0, 0)) => vec![vec![f(fr.l1)], vec![f(fr.l2)]],
            (Frame::Corank1(fr), Constants::Corank1(c), (0, 1)) => {
                // L1 u2 - L2 u1 - a1 u1 - a2 u2
                vec![vec![op(-fr.l2, -c.a[0]), op(fr.l1, -c.a[1])]]
            }
            (Frame::Corank1(fr), Constants::Corank1(c), (1, 0)) => {
                vec![vec![op(-fr.l1, c.b[0][2])], vec![op(-fr.l2, c.b[1][2])]]
            }
            (Frame::Corank1(fr), Constants::Corank1(c), (1, 1)) => {
                // L2 u1 - L1 u2 + (a1 - b23) u1 + (a2 + b13) u2
                vec![vec![op(fr.l2, c.a[0] - c.b[1][2]), op(-fr.l1, c.a[1] + c.b[0][2])]]
            }
            (Frame::Corank2(fr), Constants::Corank2(_), (0, 0)) => vec![vec![f(fr.l)]],
            (Frame::Corank2(fr), Constants::Corank2(c), (1, 0)) => {
                vec![vec![op(-fr.l, c.b[0][0]), k(c.b[0][1])], vec![k(c.b[1][0]), op(-fr.l, c.b[1][1])]]
            }
            (Frame::Corank2(fr), Constants::Corank2(c), (2, 0)) => {
                vec![vec![op(fr.l, -(c.b[0][0] + c.b[1][1]))]]
            }
            _ => {
                return Err(Error::InvalidBidegree { corank: self.corank(), p: b.p, q: b.q });
            }
        };
        Ok(DPrimeOperator::from_rows(self.corank(), b, rows))
    }
}

fn binomial(n: u8, k: u8) -> usize {
    match (n, k) {
        (_, 0) => 1,
        (n, k) if k == n => 1,
        (2, 1) => 2,
        _ => 0,
    }
}
