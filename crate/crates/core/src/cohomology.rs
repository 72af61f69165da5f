//! Per-level linear algebra over the `d'` complexes.
//!
//! Symbols only act on the `n` index of a coefficient matrix, so every
//! dimension at level `l` is a single `n`-block dimension times the
//! `m`-multiplicity `2l+1`.

use nalgebra::{DMatrix, DVector};
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::algebra_symbol;
use crate::group::{AlgebraElement, Complex};
use crate::linalg::{kernel_dim, max_abs, min_nonzero_singular_value, range_dim};
use crate::repr::RepLevel;
use crate::structures::{Bidegree, ConstantsVariant, DPrimeOperator, PresetInfo, Structure};

/// Block of `op` at level `l`, acting on stacked `n`-coordinates of the
/// component functions.
pub fn block_matrix(op: &DPrimeOperator, ell: RepLevel) -> DMatrix<Complex> {
    let d = ell.dim();
    let mut out = DMatrix::zeros(op.rows * d, op.cols * d);
    for r in 0..op.rows {
        for c in 0..op.cols {
            let entry = op.entry(r, c);
            let mut blk = algebra_symbol(&entry.field, ell).entries;
            for k in 0..d {
                blk[(k, k)] += entry.constant;
            }
            out.view_mut((r * d, c * d), (d, d)).copy_from(&blk);
        }
    }
    out
}

/// Smallest nonzero singular value of the symbol of `x` at level `l`.
pub fn spectral_gap(x: &AlgebraElement, ell: RepLevel) -> Option<f64> {
    min_nonzero_singular_value(&algebra_symbol(x, ell).entries)
}

/// Checks the explicit kernel of the corank 2 operator
/// `(u1, u2) -> (-∂₋u1 - 2u2, -∂₋u2)` at a level `l >= 1/2`.
///
/// The kernel is spanned, per row `m`, by `(t_{-l}, 0)` and
/// `(coef * t_{-l+1}, t_{-l})` with `coef = 2/sqrt(2l)`.
pub fn kernel_basis_check(ell: RepLevel) -> bool {
    kernel_basis_check_with(ell, 2.0 / f64::from(ell.two_l()).sqrt())
}

/// As [`kernel_basis_check`], with the coefficient of `t_{-l+1}` replaced.
pub fn kernel_basis_check_with(ell: RepLevel, coef: f64) -> bool {
    if ell.two_l() == 0 {
        return false;
    }
    let info = crate::structures::preset("corank2-paper").expect("built-in preset");
    let s = info.structure(ConstantsVariant::Printed).expect("matching corank");
    let op = s.dprime(Bidegree::new(1, 0)).expect("valid bidegree");
    let block = block_matrix(&op, ell);
    let d = ell.dim();
    let mut v1 = DVector::zeros(2 * d);
    v1[0] = Complex::from(1.0);
    let mut v2 = DVector::zeros(2 * d);
    v2[1] = Complex::from(coef);
    v2[d] = Complex::from(1.0);
    let basis = DMatrix::from_columns(&[v1, v2]);
    let residual = max_abs(&(&block * &basis));
    // per-row kernel dimension is 2 for l >= 1/2
    residual <= 1e-9 && range_dim(&basis) == 2 && kernel_dim(&block) == 2
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioRow {
    pub two_l: u32,
    pub gap: f64,
    pub ratio: f64,
}

/// Finite-range check of `gap(l) >= C (1 + l(l+1))^s`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosedRangeCertificate {
    #[serde(serialize_with = "ser_ratio")]
    pub s: Ratio<i64>,
    pub c_star: f64,
    pub two_l_range: (u32, u32),
    pub ratios: Vec<RatioRow>,
    /// Log-log slope of the ratio over the last two tested levels; negative
    /// means the ratio is still decaying at the end of the range.
    pub tail_slope: Option<f64>,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl ClosedRangeCertificate {
    pub fn passes(&self) -> bool {
        self.c_star > 0.0 && self.c_star.is_finite()
    }

    /// Level at which the minimum ratio is attained.
    pub fn argmin(&self) -> Option<u32> {
        self.ratios.iter().min_by(|a, b| a.ratio.total_cmp(&b.ratio)).map(|r| r.two_l)
    }
}

fn ratio_to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn closed_range_certificate(x: &AlgebraElement, s: Ratio<i64>, two_l_max: u32) -> ClosedRangeCertificate {
    let exponent = ratio_to_f64(s);
    let ratios: Vec<RatioRow> = (1..=two_l_max)
        .into_par_iter()
        .filter_map(|two_l| {
            let ell = RepLevel::from_doubled(two_l);
            spectral_gap(x, ell).map(|gap| RatioRow { two_l, gap, ratio: gap / (1.0 + ell.casimir()).powf(exponent) })
        })
        .collect();
    let c_star = ratios.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    let tail_slope = match ratios.as_slice() {
        [.., a, b] => {
            let w = |t: u32| (1.0 + RepLevel::from_doubled(t).casimir()).ln();
            Some((b.ratio.ln() - a.ratio.ln()) / (w(b.two_l) - w(a.two_l)))
        }
        _ => None,
    };
    ClosedRangeCertificate { s, c_star: if ratios.is_empty() { 0.0 } else { c_star }, two_l_range: (1, two_l_max), ratios, tail_slope }
}

/// One position `(p, q)` of a complex at one level. Dimensions include the
/// `m`-multiplicity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageReport {
    pub bidegree: Bidegree,
    pub domain_dim: usize,
    /// Kernel of the outgoing operator (everything at the top degree).
    pub ker_dim: usize,
    /// Range of the outgoing operator.
    pub ran_dim: usize,
    /// Range of the incoming operator.
    pub incoming_dim: usize,
    pub quotient_dim: usize,
    /// Smallest nonzero singular value of the outgoing block.
    pub gap: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelReport {
    pub two_l: u32,
    pub stages: Vec<StageReport>,
}

impl LevelReport {
    pub fn stage(&self, b: Bidegree) -> Option<&StageReport> {
        self.stages.iter().find(|s| s.bidegree == b)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosedRangeNote {
    pub bidegree: Bidegree,
    /// Minimum over tested levels of the smallest nonzero singular value.
    pub min_gap: Option<f64>,
    pub at_two_l: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CohomologyReport {
    pub corank: u8,
    pub two_l_max: u32,
    pub levels: Vec<LevelReport>,
    /// Sum of quotient dimensions over tested levels, per bidegree.
    pub totals: Vec<(Bidegree, usize)>,
    pub closed_range: Vec<ClosedRangeNote>,
}

impl CohomologyReport {
    pub fn total(&self, b: Bidegree) -> Option<usize> {
        self.totals.iter().find(|(x, _)| *x == b).map(|(_, t)| *t)
    }

    /// Levels with a nonzero quotient at `b`.
    pub fn contributions(&self, b: Bidegree) -> Vec<(u32, usize)> {
        self.levels.iter().filter_map(|l| l.stage(b).filter(|s| s.quotient_dim > 0).map(|s| (l.two_l, s.quotient_dim))).collect()
    }
}

/// All bidegrees `(p, q)` with `0 <= q <= top_q`, in ascending order.
pub fn all_bidegrees(s: &Structure) -> Vec<Bidegree> {
    let (top_p, top_q) = s.top_degrees();
    (0..=top_p).flat_map(|p| (0..=top_q).map(move |q| Bidegree::new(p, q))).collect()
}

pub fn level_report(s: &Structure, ell: RepLevel) -> Result<LevelReport> {
    let mult = ell.dim();
    let (_, top_q) = s.top_degrees();
    let mut stages = Vec::new();
    for b in all_bidegrees(s) {
        let domain = s.form_dim(b) * mult * mult;
        let (ker, ran, gap) = if b.q < top_q {
            let blk = block_matrix(&s.dprime(b)?, ell);
            (kernel_dim(&blk) * mult, range_dim(&blk) * mult, min_nonzero_singular_value(&blk))
        } else {
            (domain, 0, None)
        };
        let incoming = if b.q == 0 { 0 } else { range_dim(&block_matrix(&s.dprime(Bidegree::new(b.p, b.q - 1))?, ell)) * mult };
        debug_assert_eq!(ker + ran, domain);
        stages.push(StageReport {
            bidegree: b,
            domain_dim: domain,
            ker_dim: ker,
            ran_dim: ran,
            incoming_dim: incoming,
            quotient_dim: ker.saturating_sub(incoming),
            gap,
        });
    }
    Ok(LevelReport { two_l: ell.two_l(), stages })
}

/// Per-level dimensions for `0 <= 2l <= two_l_max`.
pub fn cohomology_report(s: &Structure, two_l_max: u32) -> Result<CohomologyReport> {
    let levels: Vec<LevelReport> =
        (0..=two_l_max).into_par_iter().map(|t| level_report(s, RepLevel::from_doubled(t))).collect::<Result<_>>()?;
    let totals =
        all_bidegrees(s).into_iter().map(|b| (b, levels.iter().filter_map(|l| l.stage(b)).map(|st| st.quotient_dim).sum())).collect();
    let closed_range = s
        .nontrivial_bidegrees()
        .into_iter()
        .filter(|b| b.q == 0)
        .map(|b| {
            let best =
                levels.iter().filter_map(|l| l.stage(b).and_then(|st| st.gap).map(|g| (g, l.two_l))).min_by(|x, y| x.0.total_cmp(&y.0));
            ClosedRangeNote { bidegree: b, min_gap: best.map(|x| x.0), at_two_l: best.map(|x| x.1) }
        })
        .collect();
    Ok(CohomologyReport { corank: s.corank(), two_l_max, levels, totals, closed_range })
}

/// Largest entry of `d'(p, q+1) d'(p, q)` over all composable pairs at a level.
pub fn dprime_square_residual(s: &Structure, ell: RepLevel) -> Result<f64> {
    let ops = s.nontrivial_bidegrees();
    let mut worst = 0.0f64;
    for b in &ops {
        let next = Bidegree::new(b.p, b.q + 1);
        if ops.contains(&next) {
            let prod = block_matrix(&s.dprime(next)?, ell) * block_matrix(&s.dprime(*b)?, ell);
            worst = worst.max(max_abs(&prod));
        }
    }
    Ok(worst)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VariantTotals {
    pub variant: ConstantsVariant,
    pub total: usize,
    /// `(two_l, quotient_dim)` for each level with a nonzero quotient.
    pub contributions: Vec<(u32, usize)>,
}

/// Computed top-degree cohomology per constant variant against a claimed value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Reconciliation {
    pub preset: String,
    pub bidegree: Bidegree,
    pub two_l_max: u32,
    pub claimed: usize,
    pub variants: Vec<VariantTotals>,
    pub discrepancies: Vec<crate::structures::Discrepancy>,
}

impl Reconciliation {
    pub fn agrees_with_claim(&self, v: ConstantsVariant) -> bool {
        self.variants.iter().any(|t| t.variant == v && t.total == self.claimed)
    }
}

/// Reconciles `H^{1,1}` of a corank 1 preset with the claimed vanishing.
pub fn h11_reconciliation(info: &PresetInfo, two_l_max: u32) -> Result<Reconciliation> {
    if info.frame.corank() != 1 {
        return Err(Error::WrongCorank { expected: 1, found: info.frame.corank() });
    }
    let b = Bidegree::new(1, 1);
    let variants = [ConstantsVariant::Printed, ConstantsVariant::Recomputed]
        .into_iter()
        .map(|v| {
            let rep = cohomology_report(&info.structure(v)?, two_l_max)?;
            Ok(VariantTotals { variant: v, total: rep.total(b).unwrap_or(0), contributions: rep.contributions(b) })
        })
        .collect::<Result<_>>()?;
    Ok(Reconciliation { preset: info.name.to_string(), bidegree: b, two_l_max, claimed: 0, variants, discrepancies: info.discrepancies() })
}
