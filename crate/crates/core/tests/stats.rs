mod common;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use read_core::model::per_pair_significance;
use read_core::stats::{f_sf, t_cdf, welch_t};
use read_core::{binomial_test, ols_fit, pearson, SynonymPair};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[test]
fn t_cdf_matches_reference_points() {
    let reference = common::reference();
    let points = reference["t_cdf"].as_array().unwrap();
    assert_eq!(points.len(), 20);
    for p in points {
        let (t, df, cdf) = (p["t"].as_f64().unwrap(), p["df"].as_f64().unwrap(), p["cdf"].as_f64().unwrap());
        let got = t_cdf(t, df).unwrap();
        assert!((got - cdf).abs() < 1e-10, "t = {t}, df = {df}: {got} vs {cdf}");
    }
}

#[test]
fn pearson_matches_reference() {
    let reference = common::reference();
    let p = &reference["pearson"];
    let v = |k: &str| -> Vec<f64> { p[k].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect() };
    let c = pearson(&v("x"), &v("y")).unwrap();
    assert!((c.r - p["r"].as_f64().unwrap()).abs() < 1e-12);
    assert!((c.p_value - p["p"].as_f64().unwrap()).abs() < 1e-12);
}

#[test]
fn welch_matches_reference() {
    let reference = common::reference();
    let w = &reference["welch"];
    let v = |k: &str| -> Vec<f64> { w[k].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect() };
    let t = welch_t(&v("x"), &v("y")).unwrap();
    assert!((t.t_stat - w["t"].as_f64().unwrap()).abs() < 1e-9);
    assert!((t.df - w["df"].as_f64().unwrap()).abs() < 1e-9);
    assert!((t.p_value - w["p"].as_f64().unwrap()).abs() < 1e-9);
}

#[test]
fn pair_test_matches_reference() {
    let reference = common::reference();
    let r = &reference["two_proportion"];
    let pair = SynonymPair::new("p", "a", "b", 0.3, 0.1, Some(805)).unwrap();
    let table = per_pair_significance(&[pair]).unwrap();
    let row = &table.rows[0];
    assert!((row.t_stat - r["t"].as_f64().unwrap()).abs() < 1e-9);
    assert!(close(row.p_value, r["p"].as_f64().unwrap(), 1e-6));
    assert_eq!(table.count_t, 1);
}

#[test]
fn binomial_and_f_match_reference() {
    let reference = common::reference();
    for b in reference["binomial_upper"].as_array().unwrap() {
        let (k, n) = (b["k"].as_u64().unwrap(), b["n"].as_u64().unwrap());
        let got = binomial_test(k, n, b["p0"].as_f64().unwrap()).unwrap();
        let want = b["p"].as_f64().unwrap();
        assert!((got - want).abs() <= 1e-12 * want, "k = {k}, n = {n}: {got} vs {want}");
    }
    let f = &reference["f_sf"];
    let got = f_sf(f["f"].as_f64().unwrap(), f["df1"].as_f64().unwrap(), f["df2"].as_f64().unwrap()).unwrap();
    assert!((got - f["p"].as_f64().unwrap()).abs() < 1e-12);
}

fn choose(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn binomial_exact_on_enumerable_cases() {
    for n in 1..=20u64 {
        for p0 in [0.05f64, 0.1, 0.25, 0.5, 0.9] {
            for k in 0..=n {
                let direct: f64 = (k..=n)
                    .map(|i| choose(n, i) as f64 * p0.powi(i as i32) * (1.0 - p0).powi((n - i) as i32))
                    .sum();
                let got = binomial_test(k, n, p0).unwrap();
                assert!(
                    (got - direct).abs() <= 1e-12 * direct.max(1e-300) + 1e-15,
                    "k = {k}, n = {n}, p0 = {p0}: {got} vs {direct}"
                );
            }
        }
    }
}

/// Least squares through the Moore–Penrose pseudoinverse.
fn pinv_solve(x: &[Vec<f64>], y: &[f64], intercept: bool) -> Vec<f64> {
    let k = x[0].len() + usize::from(intercept);
    let m = DMatrix::from_fn(x.len(), k, |i, j| {
        if intercept {
            if j == 0 {
                1.0
            } else {
                x[i][j - 1]
            }
        } else {
            x[i][j]
        }
    });
    let beta = m.pseudo_inverse(1e-12).unwrap() * DVector::from_column_slice(y);
    beta.iter().copied().collect()
}

#[test]
fn ols_matches_pseudoinverse_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..100 {
        let k = rng.gen_range(1..=6);
        let n = rng.gen_range(k + 3..=40);
        let intercept = case % 2 == 0;
        let x: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..k).map(|j| rng.gen_range(-5.0..5.0) * (j + 1) as f64).collect())
            .collect();
        let y: Vec<f64> = x
            .iter()
            .map(|r| r.iter().sum::<f64>() * 0.3 + rng.gen_range(-1.0..1.0) + 2.0)
            .collect();
        let fit = ols_fit(&x, &y, intercept).unwrap();
        let oracle = pinv_solve(&x, &y, intercept);
        let (b0, rest) = if intercept { (oracle[0], &oracle[1..]) } else { (0.0, &oracle[..]) };
        assert!((fit.intercept - b0).abs() < 1e-9, "case {case}");
        for (a, b) in fit.coefficients.iter().zip(rest) {
            assert!((a - b).abs() < 1e-9, "case {case}: {a} vs {b}");
        }
    }
}

#[test]
fn pearson_affine_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 1000 {
        let n = rng.gen_range(3..40);
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect();
        let y: Vec<f64> = x.iter().map(|v| v * rng.gen_range(-1.0..1.0) + rng.gen_range(-5.0..5.0)).collect();
        let Ok(base) = pearson(&x, &y) else { continue };
        let scale = |rng: &mut ChaCha8Rng| {
            let m = 10f64.powf(rng.gen_range(-2.0..2.0));
            if rng.gen_bool(0.5) {
                m
            } else {
                -m
            }
        };
        let (a, c) = (scale(&mut rng), scale(&mut rng));
        let (b, d) = (rng.gen_range(-1e3..1e3), rng.gen_range(-1e3..1e3));
        let xt: Vec<f64> = x.iter().map(|v| a * v + b).collect();
        let yt: Vec<f64> = y.iter().map(|v| c * v + d).collect();
        let moved = pearson(&xt, &yt).unwrap();
        let expected = (a * c).signum() * base.r;
        assert!((moved.r - expected).abs() < 1e-9, "n = {n}: {} vs {expected}", moved.r);
        let swapped = pearson(&y, &x).unwrap();
        assert!((swapped.r - base.r).abs() < 1e-15);
        checked += 1;
    }
}

#[test]
fn pearson_rejects_bad_input() {
    assert!(pearson(&[1.0, 2.0], &[1.0, 2.0]).is_err());
    assert!(pearson(&[1.0, 2.0, 3.0], &[1.0, 2.0]).is_err());
    assert!(pearson(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]).is_err());
    assert!(pearson(&[1.0, f64::NAN, 3.0], &[1.0, 2.0, 3.0]).is_err());
}
