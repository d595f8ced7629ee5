#![allow(dead_code)]

use jetflow::prelude::*;
use proptest::prelude::*;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn exps(n: usize, lo: u32, hi: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=hi, n).prop_filter("total in range", move |e| {
        let t: u32 = e.iter().sum();
        t >= lo && t <= hi
    })
}

/// A series with up to `terms` terms whose total degrees lie in `lo..=hi`.
pub fn series_in(n: usize, degree: u32, lo: u32, hi: u32, terms: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec((exps(n, lo, hi), small_rational()), 0..=terms)
        .prop_map(move |ts| Series::from_terms(n, degree, ts).unwrap())
}

pub fn series(n: usize, degree: u32) -> impl Strategy<Value = Series> {
    series_in(n, degree, 0, degree, 6)
}

/// A vector field of order at least 2 with polynomial components of degree
/// at most `max_deg`.
pub fn field(n: usize, max_deg: u32, degree: u32) -> impl Strategy<Value = Derivation> {
    prop::collection::vec(series_in(n, degree, 2, max_deg, 3), n)
        .prop_map(|cs| Derivation::from_components(cs).unwrap())
}

/// `z + N` with `N` of order at least 2.
pub fn f1_map(n: usize, max_deg: u32, degree: u32) -> impl Strategy<Value = MapTuple> {
    prop::collection::vec(series_in(n, degree, 2, max_deg, 3), n).prop_map(move |cs| {
        let id = MapTuple::identity(n, degree);
        id.try_add(&MapTuple::new(cs).unwrap()).unwrap()
    })
}

pub fn int_matrix(n: usize) -> impl Strategy<Value = ConstantMatrix> {
    prop::collection::vec(-3i64..=3, n * n)
        .prop_map(move |v| ConstantMatrix::from_fn(n, |i, j| int(v[i * n + j])))
}

/// Dense `e^M` by scaling and squaring with a Taylor core.
pub fn expm_oracle(m: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = m.len();
    let norm = m.iter().map(|r| r.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max);
    let mut s = 0;
    while norm / 2f64.powi(s) > 0.25 {
        s += 1;
    }
    let scale = 2f64.powi(-s);
    let a: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|x| x * scale).collect()).collect();
    let matmul = |x: &Vec<Vec<f64>>, y: &Vec<Vec<f64>>| -> Vec<Vec<f64>> {
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum()).collect()).collect()
    };
    let mut sum: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let mut term = sum.clone();
    for k in 1..=20 {
        term = matmul(&term, &a).into_iter().map(|r| r.into_iter().map(|x| x / k as f64).collect()).collect();
        for i in 0..n {
            for j in 0..n {
                sum[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..s {
        sum = matmul(&sum, &sum);
    }
    sum
}

/// Determinant by partial-pivot elimination.
pub fn det_f64(m: &[Vec<f64>]) -> f64 {
    let mut a = m.to_vec();
    let n = a.len();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    det
}
