//! Eigenvalues and singular values against nalgebra.

use lrhorn::spectra::{eigenvalues_sym, random_with_spectrum, singular_values, RectMatrix, SymMatrix};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    v
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

fn entries(n: usize, m: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0f64..10.0, n * m)
}

proptest! {
    #[test]
    fn symmetric_eigenvalues_match(n in 1usize..7, data in entries(6, 6)) {
        let rows: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| data[i.max(j) * 6 + i.min(j)]).collect()).collect();
        let ours = eigenvalues_sym(&SymMatrix::from_rect(&RectMatrix::from_rows(&rows).unwrap()).unwrap()).unwrap();
        let oracle = sorted_desc(DMatrix::from_fn(n, n, |i, j| rows[i][j]).symmetric_eigenvalues().iter().copied().collect());
        prop_assert!(close(&ours, &oracle, 1e-9), "{ours:?} vs {oracle:?}");
    }

    #[test]
    fn singular_values_match(r in 1usize..6, c in 1usize..6, data in entries(5, 5)) {
        let rows: Vec<Vec<f64>> = (0..r).map(|i| data[i * 5..i * 5 + c].to_vec()).collect();
        let ours = singular_values(&RectMatrix::from_rows(&rows).unwrap()).unwrap();
        let oracle = sorted_desc(DMatrix::from_fn(r, c, |i, j| rows[i][j]).singular_values().iter().copied().collect());
        prop_assert!(close(&ours, &oracle, 1e-9), "{ours:?} vs {oracle:?}");
    }
}

#[test]
fn planted_spectra_recovered() {
    for seed in 0..50u64 {
        let d = [4.5, 2.0, 2.0, -1.25, -3.0];
        let m = random_with_spectrum(&d, seed);
        let ours = eigenvalues_sym(&m).unwrap();
        assert!(close(&ours, &d, 1e-10), "seed {seed}: {ours:?}");
        let oracle =
            sorted_desc(DMatrix::from_fn(5, 5, |i, j| m.get(i, j)).symmetric_eigenvalues().iter().copied().collect());
        assert!(close(&oracle, &d, 1e-10));
    }
}
