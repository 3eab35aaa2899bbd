mod common;

use common::*;
use rand::Rng;
use sparse_dequant::frames::{Coefficients, Complex64, DgtFrame, TightFrame, WmdctFrame};
use sparse_dequant::proximal::{
    clip_magnitude, clip_magnitude_weighted, project_coeff_set, project_time_box, soft_threshold,
    soft_threshold_weighted, BoxSet,
};
use sparse_dequant::quantizer::{is_consistent, quantize, Signal, DEFAULT_CONSISTENCY_TOL};

const PAIRS: usize = 1000;
const SLACK: f64 = 1e-12;

fn complex_vec(r: &mut impl Rng, n: usize, scale: f64) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(r.gen_range(-scale..scale), r.gen_range(-scale..scale)))
        .collect()
}

fn cnorm(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

fn rnorm(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

fn random_box(r: &mut impl Rng, n: usize, w: u32) -> (BoxSet, sparse_dequant::quantizer::QuantizedSignal) {
    let x = Signal::new(random_signal_any(r, n), 16_000).unwrap();
    let q = quantize(&x, w).unwrap();
    (BoxSet::from_quantized(&q), q)
}

fn random_signal_any(r: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| r.gen_range(-1.0..1.0)).collect()
}

#[test]
fn soft_threshold_is_nonexpansive() {
    let mut r = rng(10);
    for _ in 0..PAIRS {
        let gamma = r.gen_range(0.0..0.5);
        let (a, b) = (random_signal_any(&mut r, 24), random_signal_any(&mut r, 24));
        let (pa, pb) = (
            soft_threshold(&a, gamma).unwrap(),
            soft_threshold(&b, gamma).unwrap(),
        );
        assert!(rnorm(&pa, &pb) <= rnorm(&a, &b) + SLACK);

        let (a, b) = (complex_vec(&mut r, 24, 1.0), complex_vec(&mut r, 24, 1.0));
        let weights: Vec<f64> = (0..24)
            .map(|i| if i % 3 == 0 { 1.0 } else { 2f64.sqrt() })
            .collect();
        let pa = soft_threshold_weighted(&a, gamma, &weights).unwrap();
        let pb = soft_threshold_weighted(&b, gamma, &weights).unwrap();
        assert!(cnorm(&pa, &pb) <= cnorm(&a, &b) + SLACK);
    }
}

#[test]
fn clip_is_nonexpansive() {
    let mut r = rng(11);
    for _ in 0..PAIRS {
        let lambda = r.gen_range(0.01..1.0);
        let (a, b) = (random_signal_any(&mut r, 24), random_signal_any(&mut r, 24));
        let (pa, pb) = (
            clip_magnitude(&a, lambda).unwrap(),
            clip_magnitude(&b, lambda).unwrap(),
        );
        assert!(rnorm(&pa, &pb) <= rnorm(&a, &b) + SLACK);

        let (a, b) = (complex_vec(&mut r, 24, 2.0), complex_vec(&mut r, 24, 2.0));
        let weights = vec![2f64.sqrt(); 24];
        let pa = clip_magnitude_weighted(&a, lambda, &weights).unwrap();
        let pb = clip_magnitude_weighted(&b, lambda, &weights).unwrap();
        assert!(cnorm(&pa, &pb) <= cnorm(&a, &b) + SLACK);
    }
}

#[test]
fn time_box_projection_is_nonexpansive_idempotent_and_feasible() {
    let mut r = rng(12);
    for i in 0..PAIRS {
        let w = 2 + (i % 7) as u32;
        let (bounds, q) = random_box(&mut r, 32, w);
        let a: Vec<f64> = (0..32).map(|_| r.gen_range(-1.5..1.5)).collect();
        let b: Vec<f64> = (0..32).map(|_| r.gen_range(-1.5..1.5)).collect();
        let (pa, pb) = (
            project_time_box(&a, &bounds).unwrap(),
            project_time_box(&b, &bounds).unwrap(),
        );
        assert!(rnorm(&pa, &pb) <= rnorm(&a, &b) + SLACK);
        assert_eq!(project_time_box(&pa, &bounds).unwrap(), pa);
        assert!(is_consistent(&Signal::new(pa, 16_000).unwrap(), &q, DEFAULT_CONSISTENCY_TOL).unwrap());
    }
}

#[test]
fn coefficient_projection_is_nonexpansive_and_commutes_with_synthesis() {
    let mut r = rng(13);
    let dgt = DgtFrame::new(8, 8, 4, 32).unwrap();
    let wm = WmdctFrame::new(6, 4, 32).unwrap();
    for i in 0..PAIRS {
        let (bounds, _) = random_box(&mut r, 32, 2 + (i % 7) as u32);

        let a = random_dgt_coeffs(&mut r, &dgt);
        let b = random_dgt_coeffs(&mut r, &dgt);
        let pa = project_coeff_set(&a, &dgt, &bounds).unwrap();
        let pb = project_coeff_set(&b, &dgt, &bounds).unwrap();
        assert!(cnorm(&pa.values, &pb.values) <= cnorm(&a.values, &b.values) + SLACK);
        let direct = project_time_box(&dgt.synthesize(&a).unwrap(), &bounds).unwrap();
        assert!(max_abs_diff(&dgt.synthesize(&pa).unwrap(), &direct) <= 1e-9);
        let again = project_coeff_set(&pa, &dgt, &bounds).unwrap();
        assert!(cnorm(&again.values, &pa.values) <= 1e-12);

        let a = random_real_coeffs(&mut r, &wm);
        let b = random_real_coeffs(&mut r, &wm);
        let pa = project_coeff_set(&a, &wm, &bounds).unwrap();
        let pb = project_coeff_set(&b, &wm, &bounds).unwrap();
        assert!(rnorm(&pa.values, &pb.values) <= rnorm(&a.values, &b.values) + SLACK);
        let direct = project_time_box(&wm.synthesize(&a).unwrap(), &bounds).unwrap();
        assert!(max_abs_diff(&wm.synthesize(&pa).unwrap(), &direct) <= 1e-9);
    }
}

/// On an orthonormal basis the coefficient-set projection is the box-constrained
/// least-squares solution. Checked against the explicit basis matrix and by
/// comparison with random feasible competitors.
#[test]
fn orthonormal_projection_matches_explicit_least_squares() {
    let (gl, m, l) = (4, 4, 16);
    let frame = WmdctFrame::new(gl, m, l).unwrap();
    let d = wmdct_synthesis_matrix(gl, m, l);
    let mut r = rng(14);
    for _ in 0..200 {
        let (bounds, _) = random_box(&mut r, l, 2);
        let z: Vec<f64> = (0..l).map(|_| r.gen_range(-2.0..2.0)).collect();
        let got = project_coeff_set(
            &Coefficients {
                values: z.clone(),
                grid: frame.grid(),
            },
            &frame,
            &bounds,
        )
        .unwrap()
        .values;

        // y = clamp(D z); c' = Dᵀ y.
        let dz: Vec<f64> = (0..l).map(|row| (0..l).map(|i| d[i][row] * z[i]).sum()).collect();
        let y: Vec<f64> = dz
            .iter()
            .zip(bounds.lower().iter().zip(bounds.upper()))
            .map(|(v, (lo, hi))| v.max(*lo).min(*hi))
            .collect();
        let expected: Vec<f64> = (0..l)
            .map(|i| (0..l).map(|row| d[i][row] * y[row]).sum())
            .collect();
        assert!(max_abs_diff(&got, &expected) < 1e-12);

        // Normal-cone condition: D z - y pushes outward only at active bounds.
        for row in 0..l {
            let resid = dz[row] - y[row];
            if resid > 1e-12 {
                assert_eq!(y[row], bounds.upper()[row]);
            } else if resid < -1e-12 {
                assert_eq!(y[row], bounds.lower()[row]);
            }
        }

        let best = rnorm(&got, &z);
        for _ in 0..20 {
            let feasible: Vec<f64> = (0..l)
                .map(|row| r.gen_range(bounds.lower()[row]..=bounds.upper()[row]))
                .collect();
            let competitor: Vec<f64> = (0..l)
                .map(|i| (0..l).map(|row| d[i][row] * feasible[row]).sum())
                .collect();
            assert!(best <= rnorm(&competitor, &z) + 1e-12);
        }
    }
}

#[test]
fn feasible_coefficients_are_left_unchanged() {
    let frame = DgtFrame::new(8, 8, 2, 32).unwrap();
    let mut r = rng(15);
    let x = Signal::new(random_signal(&mut r, 32), 16_000).unwrap();
    let q = quantize(&x, 3).unwrap();
    let bounds = BoxSet::from_quantized(&q);
    let c = frame.analyze(x.samples()).unwrap();
    let p = project_coeff_set(&c, &frame, &bounds).unwrap();
    assert!(cnorm(&p.values, &c.values) < 1e-12);
}

#[test]
fn moreau_identity() {
    let mut r = rng(16);
    for _ in 0..PAIRS {
        let gamma = r.gen_range(0.01..1.0);
        let z = complex_vec(&mut r, 8, 2.0);
        let soft = soft_threshold(&z, gamma).unwrap();
        let scaled: Vec<Complex64> = z.iter().map(|v| v / gamma).collect();
        let clip = clip_magnitude(&scaled, 1.0).unwrap();
        for ((s, c), v) in soft.iter().zip(&clip).zip(&z) {
            assert!((s + c * gamma - v).norm() < 1e-12);
        }
    }
}
