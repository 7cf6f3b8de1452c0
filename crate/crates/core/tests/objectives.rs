mod common;

use std::io::Write as _;

use approx::assert_abs_diff_eq;
use rand::rngs::StdRng;
use rand::{Rng as _, SeedableRng};

use common::ackley_reference;
use zombi::objectives::*;
use zombi::prelude::*;
use zombi::Error;

#[test]
fn ackley_matches_reference_formula() {
    assert_abs_diff_eq!(ackley(&[1.0; 5], 1.0), ackley_reference(&[1.0; 5], 1.0), epsilon = 1e-12);
    assert_abs_diff_eq!(ackley(&[1.0; 5], 1.0), 3.6253849384403627, epsilon = 1e-12);
    assert_abs_diff_eq!(ackley(&[0.0; 5], 3.0), 0.0, epsilon = 1e-12);
    let mut rng = StdRng::seed_from_u64(0);
    for _ in 0..10_000 {
        let x: Vec<f64> = (0..5).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let v = ackley(&x, 3.0);
        assert!(v > 0.0);
        assert_abs_diff_eq!(v, ackley_reference(&x, 3.0), epsilon = 1e-12);
    }
}

fn random_dataset(seed: u64, n: usize, d: usize) -> TabularDataset {
    let mut rng = StdRng::seed_from_u64(seed);
    let features: Vec<Vec<f64>> = (0..n).map(|_| (0..d).map(|j| rng.gen_range(0.0..(j + 1) as f64 * 10.0)).collect()).collect();
    let target = features.iter().map(|r| r.iter().sum::<f64>().sin()).collect();
    TabularDataset::new((0..d).map(|j| format!("f{j}")).collect(), features, "t".into(), target, ObjectiveSense::Minimize).unwrap()
}

/// Brute-force inverse-squared-distance interpolation over range-scaled features.
fn idw_oracle(ds: &TabularDataset, x: &[f64], k: usize) -> f64 {
    let d = ds.dim();
    let lo: Vec<f64> = (0..d).map(|j| ds.features.iter().map(|r| r[j]).fold(f64::INFINITY, f64::min)).collect();
    let hi: Vec<f64> = (0..d).map(|j| ds.features.iter().map(|r| r[j]).fold(f64::NEG_INFINITY, f64::max)).collect();
    let scale = |v: &[f64]| -> Vec<f64> { (0..d).map(|j| (v[j] - lo[j]) / (hi[j] - lo[j])).collect() };
    let q = scale(x);
    let mut all: Vec<(f64, f64)> = ds
        .features
        .iter()
        .zip(&ds.target)
        .map(|(r, &y)| (scale(r).iter().zip(&q).map(|(a, b)| (a - b).powi(2)).sum(), y))
        .collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0));
    let near = &all[..k];
    near.iter().map(|(s, y)| y / s).sum::<f64>() / near.iter().map(|(s, _)| 1.0 / s).sum::<f64>()
}

#[test]
fn knn_idw_matches_brute_force_and_is_bounded() {
    let ds = random_dataset(1, 300, 3);
    let (lo, hi) = ds.target_range();
    let m = InterpolatedManifold::knn_idw(ds.clone(), 8).unwrap();
    let mut rng = StdRng::seed_from_u64(8);
    for _ in 0..100 {
        let x: Vec<f64> = (0..3).map(|j| rng.gen_range(0.0..(j + 1) as f64 * 10.0)).collect();
        let v = manifold_eval(&m, &x);
        assert!(v >= lo && v <= hi);
        assert_abs_diff_eq!(v, idw_oracle(&ds, &x, 8), epsilon = 1e-12);
    }
    for (row, y) in ds.features.iter().zip(&ds.target).take(20) {
        assert_eq!(m.eval(row), *y);
    }
}

#[test]
fn bagged_trees_stay_in_target_range() {
    let ds = random_dataset(2, 200, 2);
    let (lo, hi) = ds.target_range();
    let params = ForestParams { n_trees: 20, ..Default::default() };
    let a = InterpolatedManifold::new(ds.clone(), Interpolator::BaggedTrees(params)).unwrap();
    let b = InterpolatedManifold::new(ds, Interpolator::BaggedTrees(params)).unwrap();
    for x in [[1.0, 2.0], [9.0, 19.0], [5.0, 10.0]] {
        let v = a.eval(&x);
        assert!(v >= lo && v <= hi);
        assert_eq!(v, b.eval(&x));
    }
}

fn write_temp(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn load_csv_reads_features_in_header_order() {
    let f = write_temp("a,target,b\n1,0.5,10\n3,0.1,30\n2,0.9,20\n");
    let ds = load_csv(f.path(), "target", ObjectiveSense::Minimize).unwrap();
    assert_eq!((ds.n_rows(), ds.dim()), (3, 2));
    assert_eq!(ds.feature_names, ["a", "b"]);
    let r = ds.ranges();
    assert_eq!(r.lower().coords(), &[1.0, 10.0]);
    assert_eq!(r.upper().coords(), &[3.0, 30.0]);
}

#[test]
fn load_csv_drops_unparseable_rows() {
    let f = write_temp("a,b,y\n1,2,3\noops,2,3\n4,5,6\n7,8,9\n");
    let ds = load_csv(f.path(), "y", ObjectiveSense::Minimize).unwrap();
    assert_eq!(ds.n_rows(), 3);
    assert_eq!(ds.dropped_rows, 1);
}

#[test]
fn load_csv_errors() {
    let f = write_temp("a,b\n1,2\n");
    assert!(matches!(load_csv(f.path(), "y", ObjectiveSense::Minimize), Err(Error::MissingTargetColumn(_))));
    let f = write_temp("");
    assert!(load_csv(f.path(), "y", ObjectiveSense::Minimize).is_err());
    let f = write_temp("a,y\nx,1\nz,2\n");
    assert!(load_csv(f.path(), "y", ObjectiveSense::Minimize).is_err());
}

#[test]
fn planted_needle_reference_configuration() {
    let p = plant_needle(5, 10_000, 0.008, -2.0, 1).unwrap();
    assert_eq!(p.needle_rows, 80);
    assert_eq!(p.dataset.n_rows(), 10_000);
    assert_eq!(p.dataset.target_range().0, -2.0);
    let q = plant_needle(5, 10_000, 0.008, -2.0, 1).unwrap();
    assert_eq!(p.dataset.features, q.dataset.features);
    assert!(matches!(plant_needle(5, 100, 0.005, -2.0, 1), Err(Error::EmptyNeedle)));
}

#[test]
fn smoothing_shrinks_the_range() {
    let p = plant_needle(3, 1500, 0.02, -2.0, 5).unwrap();
    let m = InterpolatedManifold::knn_idw(p.dataset, 8).unwrap();
    let min_of = |bw: f64| gaussian_smooth(&m, bw).unwrap().at_rows().into_iter().fold(f64::INFINITY, f64::min);
    let (narrow, wide) = (min_of(0.01), min_of(0.4));
    assert!(wide > narrow, "narrow {narrow} wide {wide}");
    assert!(gaussian_smooth(&m, 0.0).is_err());
}

#[test]
fn zt_reference_value() {
    assert_eq!(compute_zt(2e-4, 1e5, 2.0, 300.0).unwrap(), 0.6);
    assert!(compute_zt(2e-4, 1e5, 0.0, 300.0).is_err());
}
