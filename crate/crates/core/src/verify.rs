//! Self-check suites run by `su2ca verify`.
//!
//! Every check carries an intrinsic tolerance calibrated for the default
//! `1e-9`; a user tolerance `T` scales all of them by `T / 1e-9`.

use nalgebra::DMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::cohomology::{dprime_square_residual, kernel_basis_check, spectral_gap};
use crate::fields::{algebra_symbol, derivative_oracle, laplace_symbol, symbol_action_at, BasicField};
use crate::fourier::{analyze_poly, apply_symbol, l2_norm, solve_lowering, synthesize, synthesize_poly, FourierSeries};
use crate::group::{bracket, c, AlgebraElement, GroupPoint};
use crate::linalg::{kernel_dim, max_abs};
use crate::repr::{rep_matrix, RepLevel};
use crate::structures::{corank1_residual, corank2_residual, preset, Constants, ConstantsVariant, Frame, PresetRegistry};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyConfig {
    pub two_l_max: u32,
    pub tol: f64,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { two_l_max: 8, tol: DEFAULT_TOL, seed: 2024 }
    }
}

impl VerifyConfig {
    /// Tolerance for a check calibrated at `base` for the default setting.
    pub fn scaled(&self, base: f64) -> f64 {
        base * (self.tol / DEFAULT_TOL)
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub check: String,
    /// Worst residual over all tested cases; for counting checks, the number
    /// of mismatches.
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

fn residual_check(suite: &'static str, check: impl Into<String>, residual: f64, tolerance: f64) -> CheckOutcome {
    CheckOutcome { suite, check: check.into(), residual, tolerance, passed: residual <= tolerance }
}

fn exact_check(suite: &'static str, check: impl Into<String>, mismatches: usize) -> CheckOutcome {
    CheckOutcome { suite, check: check.into(), residual: mismatches as f64, tolerance: 0.0, passed: mismatches == 0 }
}

pub trait VerifySuite: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, cfg: &VerifyConfig) -> Vec<CheckOutcome>;
}

fn levels(max: u32) -> impl Iterator<Item = RepLevel> {
    (0..=max).map(RepLevel::from_doubled)
}

fn worst<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

pub struct Commutation;

impl VerifySuite for Commutation {
    fn name(&self) -> &'static str {
        "commutation"
    }

    fn run(&self, cfg: &VerifyConfig) -> Vec<CheckOutcome> {
        use AlgebraElement as A;
        let relations: [(&str, A, A, A); 6] = [
            ("[Y1,Y2]=Y3", A::Y1, A::Y2, A::Y3),
            ("[Y2,Y3]=Y1", A::Y2, A::Y3, A::Y1),
            ("[Y3,Y1]=Y2", A::Y3, A::Y1, A::Y2),
            ("[d+,d-]=2d0", A::D_PLUS, A::D_MINUS, 2.0 * A::D_ZERO),
            ("[d0,d+]=d+", A::D_ZERO, A::D_PLUS, A::D_PLUS),
            ("[d0,d-]=-d-", A::D_ZERO, A::D_MINUS, -A::D_MINUS),
        ];
        let tol = cfg.scaled(1e-10);
        let mut out: Vec<CheckOutcome> = relations
            .iter()
            .map(|(name, x, y, z)| {
                let r = worst(levels(cfg.two_l_max).map(|l| {
                    let sx = algebra_symbol(x, l);
                    let sy = algebra_symbol(y, l);
                    sx.commutator(&sy).max_abs_diff(&algebra_symbol(z, l))
                }));
                residual_check(self.name(), *name, r, tol)
            })
            .collect();
        let r = worst(relations.iter().map(|(_, x, y, z)| (bracket(x, y) - *z).norm()));
        out.push(residual_check(self.name(), "algebra brackets", r, tol));
        out
    }
}

pub struct Unitarity;

impl VerifySuite for Unitarity {
    fn name(&self) -> &'static str {
        "unitarity"
    }

    fn run(&self, cfg: &VerifyConfig) -> Vec<CheckOutcome> {
        let mut rng = StdRng::seed_from_u64(cfg.seed);
        let pts: Vec<(GroupPoint, GroupPoint)> =
            (0..5).map(|_| (GroupPoint::haar_random(&mut rng), GroupPoint::haar_random(&mut rng))).collect();
        let mut unit = 0.0f64;
        let mut hom = 0.0f64;
        for l in levels(cfg.two_l_max) {
            let id = DMatrix::identity(l.dim(), l.dim());
            for (x, y) in &pts {
                let tx = rep_matrix(l, x).entries;
                let ty = rep_matrix(l, y).entries;
                unit = unit.max(max_abs(&(tx.adjoint() * &tx - &id)));
                let txy = rep_matrix(l, &crate::group::group_mul(x, y)).entries;
                hom = hom.max(max_abs(&(txy - &tx * &ty)));
            }
        }
        vec![
            residual_check(self.name(), "T(x)* T(x) = id", unit, cfg.scaled(1e-10)),
            residual_check(self.name(), "T(xy) = T(x) T(y)", hom, cfg.scaled(1e-10)),
        ]
    }
}

pub struct Laplacian;

impl VerifySuite for Laplacian {
    fn name(&self) -> &'static str {
        "laplacian"
    }

    fn run(&self, cfg: &VerifyConfig) -> Vec<CheckOutcome> {
        let r = worst(levels(cfg.two_l_max).map(|l| {
            let p = algebra_symbol(&AlgebraElement::D_PLUS, l);
            let m = algebra_symbol(&AlgebraElement::D_MINUS, l);
            let z = algebra_symbol(&AlgebraElement::D_ZERO, l);
            let mut casimir = z.compose(&z);
            casimir.entries += (p.compose(&m).entries + m.compose(&p).entries) * c(0.5, 0.0);
            let ys = [AlgebraElement::Y1, AlgebraElement::Y2, AlgebraElement::Y3].map(|y| algebra_symbol(&y, l));
            let mut neg_sum = ys[0].compose(&ys[0]);
            neg_sum.entries += ys[1].compose(&ys[1]).entries + ys[2].compose(&ys[2]).entries;
            neg_sum.entries *= c(-1.0, 0.0);
            let lap = laplace_symbol(l);
            lap.max_abs_diff(&casimir).max(lap.max_abs_diff(&neg_sum))
        }));
        vec![residual_check(self.name(), "l(l+1) = d0^2 + (d+d- + d-d+)/2", r, cfg.scaled(1e-10))]
    }
}

pub struct DerivativeOracle;

impl VerifySuite for DerivativeOracle {
    fn name(&self) -> &'static str {
        "ladder-vs-derivative"
    }

    fn run(&self, cfg: &VerifyConfig) -> Vec<CheckOutcome> {
        let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0x5eed);
        let pts: Vec<GroupPoint> = (0..4).map(|_| GroupPoint::haar_random(&mut rng)).collect();
        let mut r = 0.0f64;
        for l in levels(cfg.two_l_max.min(6)) {
            for f in BasicField::ALL {
                for m in l.weights() {
                    for n in l.weights() {
                        for x in &pts {
                            let exact = symbol_action_at(&f.element(), l, m, n, x);
                            match derivative_oracle(&f.element(), l, m, n, x) {
                                Ok(fd) => r = r.max((exact - fd).norm()),
                                Err(_) => r = f64::INFINITY,
                            }
                        }
                    }
                }
            }
        }
        vec![residual_check(self.name(), "symbol action = finite difference", r, cfg.scaled(1e-7))]
    }
}

fn random_series(rng: &mut StdRng, max_two_l: u32) -> FourierSeries {
    let mut f = FourierSeries::new();
    for l in levels(max_two_l) {
        for m in l.weights() {
            for n in l.weights() {
                f.add(m, n, c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            }
        }
    }
    f
}

pub struct Plancherel;

impl VerifySuite for Plancherel {
    fn name(&self) -> &'static str {
        "plancherel"
    }

    fn run(&self, cfg: &VerifyConfig) -> Vec<CheckOutcome> {
        let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0xf00);
        let f = random_series(&mut rng, cfg.two_l_max.min(4));
        let p = synthesize_poly(&f);
        let (round_trip, plancherel, pointwise) = match analyze_poly(&p) {
            Ok(g) => {
                let rt = l2_norm(&g.sub(&f));
                let pl = (l2_norm(&f).powi(2) - p.haar_inner(&p).re).abs();
                let pts: Vec<GroupPoint> = (0..8).map(|_| GroupPoint::haar_random(&mut rng)).collect();
                let pw = worst(pts.iter().map(|x| (synthesize(&f, x) - p.eval_at(x)).norm()));
                (rt, pl, pw)
            }
            Err(_) => (f64::INFINITY, f64::INFINITY, f64::INFINITY),
        };
        vec![
            residual_check(self.name(), "analyze(synthesize(f)) = f", round_trip, cfg.scaled(1e-9)),
            residual_check(self.name(), "||f||^2 = sum |c|^2", plancherel, cfg.scaled(1e-9)),
            residual_check(self.name(), "pointwise synthesis", pointwise, cfg.scaled(1e-9)),
        ]
    }
}

pub struct LoweringSolve;

impl VerifySuite for LoweringSolve {
    fn name(&self) -> &'static str {
        "lowering-solve"
    }

    fn run(&self, cfg: &VerifyConfig) -> Vec<CheckOutcome> {
        let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0xd0);
        let mut residual = 0.0f64;
        let mut wrong_errors = 0usize;
        for _ in 0..20 {
            let mut f = random_series(&mut rng, cfg.two_l_max);
            // clear the top weights so f is in the range
            let mut cleared = FourierSeries::new();
            for (m, n, v) in f.coefficients() {
                if n.two_m() != n.level().two_l() as i32 {
                    cleared.add(m, n, v);
                }
            }
            match solve_lowering(&cleared) {
                Ok(u) => {
                    let back = apply_symbol(&AlgebraElement::D_MINUS, &u);
                    residual = residual.max(l2_norm(&back.sub(&cleared)));
                }
                Err(_) => wrong_errors += 1,
            }
            f.prune(0.0);
            if f.blocks().next().is_some() && solve_lowering(&f).is_ok() {
                wrong_errors += 1;
            }
        }
        vec![
            residual_check(self.name(), "d- u = f on range", residual, cfg.scaled(1e-9)),
            exact_check(self.name(), "top weight obstruction detected", wrong_errors),
        ]
    }
}

pub struct Dimensions;

impl VerifySuite for Dimensions {
    fn name(&self) -> &'static str {
        "dimensions"
    }

    fn run(&self, cfg: &VerifyConfig) -> Vec<CheckOutcome> {
        let ls: Vec<RepLevel> = levels(cfg.two_l_max).collect();
        let kernel_mismatch = ls.par_iter().filter(|l| kernel_dim(&algebra_symbol(&AlgebraElement::D_MINUS, **l).entries) != 1).count();
        let gap = worst(
            ls.iter()
                .filter(|l| l.two_l() > 0)
                .map(|l| spectral_gap(&AlgebraElement::D_MINUS, *l).map_or(f64::INFINITY, |g| (g - f64::from(l.two_l()).sqrt()).abs())),
        );
        let basis_fail = ls.iter().filter(|l| l.two_l() > 0 && !kernel_basis_check(**l)).count();
        vec![
            exact_check(self.name(), "dim ker d- = 2l+1", kernel_mismatch),
            residual_check(self.name(), "gap(d-) = sqrt(2l)", gap, cfg.scaled(1e-9)),
            exact_check(self.name(), "explicit kernel vectors", basis_fail),
        ]
    }
}

pub struct Structures;

impl VerifySuite for Structures {
    fn name(&self) -> &'static str {
        "structures"
    }

    fn run(&self, cfg: &VerifyConfig) -> Vec<CheckOutcome> {
        let reg = PresetRegistry::builtin();
        let mut recon = 0.0f64;
        for name in reg.names() {
            let info = reg.info(name).expect("built-in preset");
            recon = recon.max(match (info.frame, info.recomputed) {
                (Frame::Corank1(f), Constants::Corank1(k)) => corank1_residual(&f, &k),
                (Frame::Corank2(f), Constants::Corank2(k)) => corank2_residual(&f, &k),
                _ => f64::INFINITY,
            });
        }
        let s = preset("corank1-paper").and_then(|i| i.structure(ConstantsVariant::Recomputed)).expect("built-in preset");
        let dd = worst(levels(cfg.two_l_max).map(|l| dprime_square_residual(&s, l).unwrap_or(f64::INFINITY)));
        vec![
            residual_check(self.name(), "bracket reconstruction", recon, cfg.scaled(1e-10)),
            residual_check(self.name(), "d' d' = 0", dd, cfg.scaled(1e-9)),
        ]
    }
}

pub struct SuiteRegistry {
    suites: Vec<Box<dyn VerifySuite>>,
}

impl SuiteRegistry {
    pub fn builtin() -> Self {
        SuiteRegistry {
            suites: vec![
                Box::new(Commutation),
                Box::new(Unitarity),
                Box::new(Laplacian),
                Box::new(DerivativeOracle),
                Box::new(Plancherel),
                Box::new(LoweringSolve),
                Box::new(Dimensions),
                Box::new(Structures),
            ],
        }
    }

    pub fn register(&mut self, suite: Box<dyn VerifySuite>) {
        self.suites.retain(|s| s.name() != suite.name());
        self.suites.push(suite);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn VerifySuite> {
        self.suites.iter().find(|s| s.name() == name).map(|s| s.as_ref())
    }

    /// Runs every suite concurrently; outcomes keep registration order.
    pub fn run_all(&self, cfg: &VerifyConfig) -> Vec<CheckOutcome> {
        self.suites.par_iter().map(|s| s.run(cfg)).collect::<Vec<_>>().into_iter().flatten().collect()
    }
}

/// The first failing check, if any.
pub fn first_failure(outcomes: &[CheckOutcome]) -> Option<&CheckOutcome> {
    outcomes.iter().find(|o| !o.passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_run_passes() {
        let out = SuiteRegistry::builtin().run_all(&VerifyConfig::default());
        assert!(first_failure(&out).is_none(), "{:?}", first_failure(&out));
        let suites: Vec<_> = out.iter().map(|o| o.suite).collect();
        for s in ["commutation", "unitarity", "plancherel"] {
            assert!(suites.contains(&s));
        }
    }

    #[test]
    fn trivial_level_only() {
        let cfg = VerifyConfig { two_l_max: 0, ..VerifyConfig::default() };
        let out = SuiteRegistry::builtin().run_all(&cfg);
        assert!(first_failure(&out).is_none(), "{:?}", first_failure(&out));
    }

    #[test]
    fn impossible_tolerance_fails() {
        let cfg = VerifyConfig { tol: 1e-30, ..VerifyConfig::default() };
        let out = SuiteRegistry::builtin().run_all(&cfg);
        assert!(first_failure(&out).is_some());
    }

    #[test]
    fn deterministic() {
        let cfg = VerifyConfig { two_l_max: 3, ..VerifyConfig::default() };
        let reg = SuiteRegistry::builtin();
        assert_eq!(reg.run_all(&cfg), reg.run_all(&cfg));
    }
}
