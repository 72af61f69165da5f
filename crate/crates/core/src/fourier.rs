//! Finite Peter-Weyl series.
//!
//! A series stores, for each level, the coefficients `c_{mn}` of
//! `f = sum c_{mn} sqrt(2l+1) t^l_{mn}`. In this normalization the functions
//! `sqrt(2l+1) t^l_{mn}` are orthonormal in `L^2`, so the norm of `f` is the
//! Euclidean norm of its coefficients.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fields::algebra_symbol;
use crate::group::{AlgebraElement, Complex, GroupPoint};
use crate::poly::Poly;
use crate::repr::{matrix_coeff_poly, rep_matrix, CoeffMatrix, RepLevel, Weight};

/// Degree guard for [`analyze_poly`].
pub const MAX_ANALYSIS_DEGREE: u32 = 12;

/// Absolute tolerance on the top-weight coefficient in [`solve_lowering`].
pub const RANGE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FourierSeries {
    terms: BTreeMap<RepLevel, CoeffMatrix>,
}

impl FourierSeries {
    pub fn new() -> Self {
        FourierSeries::default()
    }

    /// Single coefficient `c` at `(l, m, n)`.
    pub fn single(m: Weight, n: Weight, c: Complex) -> Self {
        let mut f = FourierSeries::new();
        f.add(m, n, c);
        f
    }

    pub fn insert_block(&mut self, block: CoeffMatrix) {
        self.terms.insert(block.level, block);
    }

    /// Adds `c` to the coefficient at `(m, n)`. Both weights carry the level.
    pub fn add(&mut self, m: Weight, n: Weight, c: Complex) {
        debug_assert_eq!(m.level(), n.level());
        let level = n.level();
        let block = self.terms.entry(level).or_insert_with(|| CoeffMatrix::zeros(level));
        let v = block.get(m, n);
        block.set(m, n, v + c);
    }

    pub fn coeff(&self, m: Weight, n: Weight) -> Complex {
        self.terms.get(&n.level()).map_or(Complex::from(0.0), |b| b.get(m, n))
    }

    pub fn block(&self, level: RepLevel) -> Option<&CoeffMatrix> {
        self.terms.get(&level)
    }

    pub fn blocks(&self) -> impl Iterator<Item = &CoeffMatrix> {
        self.terms.values()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Drops levels whose coefficients are all within `tol` of zero.
    pub fn prune(&mut self, tol: f64) {
        self.terms.retain(|_, b| !b.is_zero(tol));
    }

    /// Iterates nonzero `(m, n, c)` triples in ascending level order.
    pub fn coefficients(&self) -> impl Iterator<Item = (Weight, Weight, Complex)> + '_ {
        self.terms.values().flat_map(|b| {
            let level = b.level;
            level.weights().flat_map(move |m| {
                level.weights().filter_map(move |n| {
                    let c = b.get(m, n);
                    (c != Complex::from(0.0)).then_some((m, n, c))
                })
            })
        })
    }

    pub fn sub(&self, other: &FourierSeries) -> FourierSeries {
        let mut out = self.clone();
        for (m, n, c) in other.coefficients() {
            out.add(m, n, -c);
        }
        out
    }
}

/// Pointwise value `sum c_{mn} sqrt(2l+1) t^l_{mn}(x)`.
pub fn synthesize(f: &FourierSeries, x: &GroupPoint) -> Complex {
    f.blocks()
        .map(|b| {
            let t = rep_matrix(b.level, x);
            let s: Complex = b.entries.iter().zip(t.entries.iter()).map(|(c, t)| c * t).sum();
            s * (b.level.dim() as f64).sqrt()
        })
        .sum()
}

/// The series as an explicit polynomial on the sphere.
pub fn synthesize_poly(f: &FourierSeries) -> Poly {
    let mut out = Poly::zero();
    for (m, n, c) in f.coefficients() {
        let scale = (n.level().dim() as f64).sqrt();
        out = &out + &matrix_coeff_poly(m, n).scale(c * scale);
    }
    out
}

/// Fourier coefficients of a polynomial in `z1, conj(z1), z2, conj(z2)`.
pub fn analyze_poly(p: &Poly) -> Result<FourierSeries> {
    let degree = p.degree();
    if degree > MAX_ANALYSIS_DEGREE {
        return Err(Error::DegreeGuard { degree, max: MAX_ANALYSIS_DEGREE });
    }
    let mut out = FourierSeries::new();
    for two_l in 0..=degree {
        let level = RepLevel::from_doubled(two_l);
        let scale = (level.dim() as f64).sqrt();
        let mut block = CoeffMatrix::zeros(level);
        for m in level.weights() {
            for n in level.weights() {
                block.set(m, n, p.haar_inner(&matrix_coeff_poly(m, n)) * scale);
            }
        }
        out.insert_block(block);
    }
    out.prune(1e-13);
    Ok(out)
}

/// Applies the left-invariant field `X` blockwise.
pub fn apply_symbol(x: &AlgebraElement, f: &FourierSeries) -> FourierSeries {
    let mut out = FourierSeries::new();
    for b in f.blocks() {
        out.insert_block(algebra_symbol(x, b.level).apply(b));
    }
    out
}

pub fn l2_norm(f: &FourierSeries) -> f64 {
    f.blocks().flat_map(|b| b.entries.iter()).map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Minimal-norm solution of `d_minus u = f`.
///
/// The lowering field sends `t_{m,n+1}` to `-sqrt((l+n+1)(l-n)) t_{mn}`, so
/// each block is a weighted shift: `u_{m,n+1} = -f_{mn} / sqrt((l+n+1)(l-n))`
/// for `n < l`, `u_{m,-l} = 0`, and `f_{m,l}` must vanish.
pub fn solve_lowering(f: &FourierSeries) -> Result<FourierSeries> {
    let mut out = FourierSeries::new();
    let mut obstructions = Vec::new();
    for b in f.blocks() {
        let level = b.level;
        let top = level.weight(level.two_l() as i32).expect("top weight");
        let mut u = CoeffMatrix::zeros(level);
        for m in level.weights() {
            if b.get(m, top).norm() > RANGE_TOL {
                obstructions.push((level.two_l(), m.two_m(), top.two_m()));
            }
            for n in level.weights().filter(|n| *n != top) {
                let up = Weight::new(level, n.two_m() + 2).expect("raised weight");
                let w = (f64::from(up.l_plus()) * f64::from(up.l_minus() + 1)).sqrt();
                u.set(m, up, -b.get(m, n) / w);
            }
        }
        out.insert_block(u);
    }
    if !obstructions.is_empty() {
        return Err(Error::NotInRange(obstructions));
    }
    out.prune(0.0);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::c;
    use crate::poly::Var;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn w(two_l: u32, two_m: i32) -> Weight {
        RepLevel::from_doubled(two_l).weight(two_m).unwrap()
    }

    fn random_series(rng: &mut StdRng, max_two_l: u32) -> FourierSeries {
        let mut f = FourierSeries::new();
        for two_l in 0..=max_two_l {
            let level = RepLevel::from_doubled(two_l);
            for m in level.weights() {
                for n in level.weights() {
                    f.add(m, n, c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
                }
            }
        }
        f
    }

    #[test]
    fn synthesize_examples() {
        let mut rng = StdRng::seed_from_u64(41);
        let x = GroupPoint::haar_random(&mut rng);
        let one = FourierSeries::single(w(0, 0), w(0, 0), c(1.0, 0.0));
        assert!((synthesize(&one, &x) - c(1.0, 0.0)).norm() < 1e-15);
        let z1 = FourierSeries::single(w(1, -1), w(1, -1), c(0.5f64.sqrt(), 0.0));
        assert!((synthesize(&z1, &x) - x.z1()).norm() < 1e-15);
        assert_eq!(synthesize(&FourierSeries::new(), &x), c(0.0, 0.0));
    }

    #[test]
    fn analyze_examples() {
        let f = analyze_poly(&Poly::constant(c(1.0, 0.0))).unwrap();
        assert_eq!(f, FourierSeries::single(w(0, 0), w(0, 0), c(1.0, 0.0)));

        let f = analyze_poly(&Poly::var(Var::Z1)).unwrap();
        let coeffs: Vec<_> = f.coefficients().filter(|(_, _, c)| c.norm() > 1e-12).collect();
        assert_eq!(coeffs.len(), 1);
        let (m, n, v) = coeffs[0];
        assert_eq!((m, n), (w(1, -1), w(1, -1)));
        assert!((v - c(0.5f64.sqrt(), 0.0)).norm() < 1e-14);

        let abs_z1 = Poly::monomial([1, 1, 0, 0], c(1.0, 0.0));
        let f = analyze_poly(&abs_z1).unwrap();
        let levels: Vec<u32> = f.blocks().map(|b| b.level.two_l()).collect();
        assert_eq!(levels, vec![0, 2]);
        // mean of |z1|^2 is 1/2
        assert!((f.coeff(w(0, 0), w(0, 0)) - c(0.5, 0.0)).norm() < 1e-14);

        let big = Poly::monomial([13, 0, 0, 0], c(1.0, 0.0));
        assert!(matches!(analyze_poly(&big), Err(Error::DegreeGuard { .. })));
    }

    #[test]
    fn analysis_inverts_synthesis() {
        let mut rng = StdRng::seed_from_u64(42);
        let f = random_series(&mut rng, 4);
        // rebuild f as a polynomial
        let mut p = Poly::zero();
        for (m, n, cf) in f.coefficients() {
            let s = (n.level().dim() as f64).sqrt();
            p = &p + &matrix_coeff_poly(m, n).scale(cf * s);
        }
        let g = analyze_poly(&p).unwrap();
        for (m, n, cf) in f.coefficients() {
            assert!((g.coeff(m, n) - cf).norm() < 1e-9);
        }
        assert!(l2_norm(&g.sub(&f)) < 1e-9);
        for _ in 0..50 {
            let x = GroupPoint::haar_random(&mut rng);
            assert!((synthesize(&g, &x) - p.eval_at(&x)).norm() < 1e-9);
        }
    }

    #[test]
    fn apply_symbol_examples() {
        let constant = FourierSeries::single(w(0, 0), w(0, 0), c(2.0, 0.0));
        assert!(l2_norm(&apply_symbol(&AlgebraElement::D_MINUS, &constant)) == 0.0);

        let t = FourierSeries::single(w(3, 1), w(3, -1), c(1.0, 0.0));
        let g = apply_symbol(&AlgebraElement::D_ZERO, &t);
        assert!((g.coeff(w(3, 1), w(3, -1)) - c(-0.5, 0.0)).norm() < 1e-15);

        let t = FourierSeries::single(w(1, -1), w(1, 1), c(1.0, 0.0));
        let g = apply_symbol(&AlgebraElement::D_MINUS, &t);
        assert!((g.coeff(w(1, -1), w(1, -1)) - c(-1.0, 0.0)).norm() < 1e-15);
        assert!(g.coeff(w(1, -1), w(1, 1)).norm() < 1e-15);
    }

    #[test]
    fn l2_norm_examples() {
        assert_eq!(l2_norm(&FourierSeries::single(w(2, 0), w(2, 2), c(3.0, 0.0))), 3.0);
        assert_eq!(l2_norm(&FourierSeries::new()), 0.0);
    }

    #[test]
    fn plancherel_matches_exact_haar_integral() {
        let mut rng = StdRng::seed_from_u64(43);
        let f = random_series(&mut rng, 3);
        let p = synthesize_poly(&f);
        let exact = p.haar_inner(&p).re;
        assert!((l2_norm(&f).powi(2) - exact).abs() < 1e-10);
    }

    #[test]
    fn solve_lowering_examples() {
        let f = FourierSeries::single(w(1, 1), w(1, -1), c(1.0, 0.0));
        let u = solve_lowering(&f).unwrap();
        assert!((u.coeff(w(1, 1), w(1, 1)) - c(-1.0, 0.0)).norm() < 1e-15);
        assert!(u.coeff(w(1, 1), w(1, -1)).norm() == 0.0);

        assert!(solve_lowering(&FourierSeries::new()).unwrap().is_empty());

        let f = FourierSeries::single(w(4, -2), w(4, 4), c(1.0, 0.0));
        assert_eq!(solve_lowering(&f), Err(Error::NotInRange(vec![(4, -2, 4)])));

        let f = FourierSeries::single(w(0, 0), w(0, 0), c(1.0, 0.0));
        assert_eq!(solve_lowering(&f), Err(Error::NotInRange(vec![(0, 0, 0)])));
    }

    #[test]
    fn solve_lowering_inverts_and_is_minimal() {
        let mut rng = StdRng::seed_from_u64(44);
        for _ in 0..100 {
            let two_l = rng.random_range(1..=20u32);
            let level = RepLevel::from_doubled(two_l);
            let mut f = FourierSeries::new();
            for m in level.weights() {
                for n in level.weights().filter(|n| n.two_m() < two_l as i32) {
                    f.add(m, n, c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
                }
            }
            let scale = l2_norm(&f);
            let u = solve_lowering(&f).unwrap();
            let back = apply_symbol(&AlgebraElement::D_MINUS, &u);
            assert!(l2_norm(&back.sub(&f)) < 1e-9);
            let bottom = level.weight(-(two_l as i32)).unwrap();
            for m in level.weights() {
                assert_eq!(u.coeff(m, bottom), c(0.0, 0.0));
            }
            // ||u|| <= ||f|| / sqrt(2l)
            assert!(l2_norm(&u) <= scale / (two_l as f64).sqrt() + 1e-9);
        }
    }
}
