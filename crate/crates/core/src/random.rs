//! Seeded generators for test instances. ChaCha8 has a fixed stream
//! definition, so a seed gives the same instance on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{int, Rational};
use crate::generator::infer_generator_recursive;
use crate::matrix::{ConstantMatrix, SeriesMatrix};
use crate::operators::{exp_flow, Derivation};
use crate::series::{MapTuple, Series};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// An independent stream for case `index` of a sweep.
    pub fn for_case(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Sampler { rng }
    }

    pub fn range(&mut self, lo: u32, hi: u32) -> u32 {
        self.rng.random_range(lo..=hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n as u64) as usize
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random_bool(0.5)
    }

    /// A nonzero integer in `[-3, 3]`.
    pub fn coeff(&mut self) -> Rational {
        let k: i64 = self.rng.random_range(1..=3);
        int(if self.coin() { k } else { -k })
    }

    /// An exponent of total degree `k` in variables `vars`.
    fn exponent(&mut self, n: usize, k: u32, vars: &[usize]) -> Vec<u32> {
        let mut e = vec![0; n];
        for _ in 0..k {
            e[vars[self.index(vars.len())]] += 1;
        }
        e
    }

    /// A nonzero sparse polynomial in `vars` with one to four terms, each of
    /// some total degree drawn from `degrees`. Draws whose terms cancel are
    /// redrawn. Zero only if every degree exceeds the truncation.
    pub fn polynomial_in(&mut self, n: usize, degree: u32, degrees: &[u32], vars: &[usize]) -> Series {
        if degrees.iter().all(|&k| k > degree) {
            return Series::zero(n, degree);
        }
        loop {
            let count = self.range(1, 4);
            let mut acc = Series::zero(n, degree);
            for _ in 0..count {
                let k = degrees[self.index(degrees.len())];
                let e = self.exponent(n, k, vars);
                acc = &acc + &Series::monomial(n, degree, e, self.coeff()).expect("n exponents");
            }
            if !acc.is_zero() {
                return acc;
            }
        }
    }

    pub fn polynomial(&mut self, n: usize, degree: u32, lo: u32, hi: u32) -> Series {
        let degrees: Vec<u32> = (lo..=hi).collect();
        let vars: Vec<usize> = (0..n).collect();
        self.polynomial_in(n, degree, &degrees, &vars)
    }

    /// `z + (random terms of degree 2..=max_deg)`; a component is left
    /// linear with probability one half.
    pub fn map_f1(&mut self, n: usize, max_deg: u32, degree: u32) -> MapTuple {
        let comps = (0..n)
            .map(|i| {
                let z = Series::var(n, degree, i);
                if self.coin() {
                    &z + &self.polynomial(n, degree, 2, max_deg)
                } else {
                    z
                }
            })
            .collect();
        MapTuple::new(comps).expect("uniform shape")
    }

    /// A [`map_f1`](Self::map_f1) draw whose generator has nonzero
    /// divergence modulo `D - 1`, so `det JF != 1`. Other draws are discarded.
    pub fn non_keller_map(&mut self, n: usize, max_deg: u32, degree: u32) -> MapTuple {
        loop {
            let f = self.map_f1(n, max_deg, degree);
            let a = infer_generator_recursive(&f).expect("map is in F1");
            if !a.divergence().truncate(degree - 1).expect("coarser").is_zero() {
                return f;
            }
        }
    }

    fn field(&mut self, n: usize, degree: u32, degrees: &[u32]) -> Derivation {
        let vars: Vec<usize> = (0..n).collect();
        let comps = (0..n)
            .map(|_| {
                if self.coin() {
                    self.polynomial_in(n, degree, degrees, &vars)
                } else {
                    Series::zero(n, degree)
                }
            })
            .collect();
        Derivation::from_components(comps).expect("order >= 2")
    }

    /// A polynomial field of order >= 2 with nonzero divergence.
    pub fn generic_derivation(&mut self, n: usize, max_deg: u32, degree: u32) -> Derivation {
        let degrees: Vec<u32> = (2..=max_deg).collect();
        loop {
            let a = self.field(n, degree, &degrees);
            if !a.divergence().truncate(degree - 1).expect("coarser").is_zero() {
                return a;
            }
        }
    }

    /// Any polynomial field of order >= 2, possibly zero.
    pub fn derivation(&mut self, n: usize, max_deg: u32, degree: u32) -> Derivation {
        let degrees: Vec<u32> = (2..=max_deg).collect();
        self.field(n, degree, &degrees)
    }

    /// A sum of Hamiltonian fields `dh/dz_j d/dz_i - dh/dz_i d/dz_j`, which
    /// are divergence free. Zero when `n = 1`, the only such field there.
    pub fn divergence_free_derivation(&mut self, n: usize, max_deg: u32, degree: u32) -> Derivation {
        if n == 1 {
            return Derivation::zero(1, degree);
        }
        loop {
            let mut comps = vec![Series::zero(n, degree); n];
            for _ in 0..self.range(1, 2) {
                let i = self.index(n);
                let j = (i + 1 + self.index(n - 1)) % n;
                let h = self.polynomial(n, degree, 3, (max_deg + 1).min(degree));
                comps[i] = &comps[i] + &h.partial(j).expect("in range");
                comps[j] = &comps[j] - &h.partial(i).expect("in range");
            }
            let a = Derivation::from_components(comps).expect("order >= 2");
            if !a.is_zero() {
                return a;
            }
        }
    }

    /// A field with only odd-degree terms (3, 5, ...), so `a(-z) = -a(z)`.
    pub fn odd_derivation(&mut self, n: usize, max_deg: u32, degree: u32) -> Derivation {
        let degrees: Vec<u32> = (3..=max_deg.max(3)).step_by(2).collect();
        self.nonzero_field(n, degree, &degrees)
    }

    /// A field with only even-degree terms (2, 4, ...).
    pub fn even_derivation(&mut self, n: usize, max_deg: u32, degree: u32) -> Derivation {
        let degrees: Vec<u32> = (2..=max_deg.max(2)).step_by(2).collect();
        self.nonzero_field(n, degree, &degrees)
    }

    /// A field with terms of both parities.
    pub fn mixed_parity_derivation(&mut self, n: usize, degree: u32) -> Derivation {
        let vars: Vec<usize> = (0..n).collect();
        let mut a = self.nonzero_field(n, degree, &[2, 3]);
        let i = self.index(n);
        let mut comps = a.coeffs().components().to_vec();
        comps[i] = &(&comps[i] + &self.polynomial_in(n, degree, &[2], &vars))
            + &self.polynomial_in(n, degree, &[3], &vars);
        a = Derivation::from_components(comps).expect("order >= 2");
        let c = a.coeffs();
        if c.components().iter().any(|s| !s.is_odd()) && c.components().iter().any(|s| !s.is_even()) {
            a
        } else {
            self.mixed_parity_derivation(n, degree)
        }
    }

    fn nonzero_field(&mut self, n: usize, degree: u32, degrees: &[u32]) -> Derivation {
        loop {
            let a = self.field(n, degree, degrees);
            if !a.is_zero() {
                return a;
            }
        }
    }

    /// A strictly upper triangular integer matrix conjugated by a few
    /// elementary matrices `I + c E_ij`, whose inverses are `I - c E_ij`.
    pub fn nilpotent_matrix(&mut self, n: usize) -> ConstantMatrix {
        let upper = ConstantMatrix::from_fn(n, |i, j| if j > i && self.coin() { self.coeff() } else { int(0) });
        let mut m = upper;
        if n > 1 {
            for _ in 0..self.range(1, 3) {
                let i = self.index(n);
                let j = (i + 1 + self.index(n - 1)) % n;
                let c = self.coeff();
                let e = |sign: i64| {
                    ConstantMatrix::from_fn(n, |r, s| {
                        if r == s {
                            int(1)
                        } else if r == i && s == j {
                            &c * int(sign)
                        } else {
                            int(0)
                        }
                    })
                };
                m = e(1).mul(&m).mul(&e(-1));
            }
        }
        m
    }

    /// Entries uniform in `[-1, 1]`.
    pub fn float_matrix(&mut self, n: usize) -> ConstantMatrix<f64> {
        ConstantMatrix::from_fn(n, |_, _| self.rng.random_range(-1.0..=1.0))
    }

    /// `H = (p(z2, ..., zn), 0, ..., 0)` with `p` homogeneous of degree
    /// `d`; then `JH` has only its first row, which misses column one, so
    /// `(JH)^2 = 0`. Needs `n >= 2`.
    pub fn bcw_first_row(&mut self, n: usize, d: u32, degree: u32) -> MapTuple {
        let vars: Vec<usize> = (1..n).collect();
        let mut comps = vec![Series::zero(n, degree); n];
        comps[0] = self.polynomial_in(n, degree, &[d], &vars);
        MapTuple::new(comps).expect("uniform shape")
    }

    /// `H = (p(z3), q(z3), 0, ...)`; `JH` lives in column three and row
    /// three vanishes. Needs `n >= 3`.
    pub fn bcw_third_column(&mut self, n: usize, d: u32, degree: u32) -> MapTuple {
        let mut comps = vec![Series::zero(n, degree); n];
        let mut e = vec![0; n];
        e[2] = d;
        comps[0] = Series::monomial(n, degree, e.clone(), self.coeff()).expect("n exponents");
        comps[1] = Series::monomial(n, degree, e, self.coeff()).expect("n exponents");
        MapTuple::new(comps).expect("uniform shape")
    }

    /// Entries are polynomials of degree at most `max_deg`, constants
    /// included.
    pub fn series_matrix(&mut self, n: usize, max_deg: u32, degree: u32) -> SeriesMatrix {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| self.polynomial(n, degree, 0, max_deg)).collect())
            .collect();
        SeriesMatrix::new(rows).expect("square")
    }
}

/// A pseudorandom map tangent to the identity. With `keller` it is
/// `exp(A) z` for a divergence-free `A`, so its Jacobian determinant is 1;
/// otherwise it is `z` plus random terms with a generator of nonzero
/// divergence.
pub fn random_map(seed: u64, n: usize, max_deg: u32, degree: u32, keller: bool) -> MapTuple {
    assert!(n >= 1 && max_deg >= 2, "need n >= 1 and max_deg >= 2");
    let mut s = Sampler::new(seed);
    if keller {
        let a = s.divergence_free_derivation(n, max_deg, degree);
        exp_flow(&a, &int(1)).expect("graded field")
    } else {
        s.non_keller_map(n, max_deg, degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobian::jacobian_det_direct;

    #[test]
    fn deterministic() {
        assert_eq!(random_map(7, 3, 3, 6, false), random_map(7, 3, 3, 6, false));
        assert_eq!(random_map(7, 2, 3, 6, true), random_map(7, 2, 3, 6, true));
        assert_ne!(random_map(7, 3, 3, 6, false), random_map(8, 3, 3, 6, false));
        let a = Sampler::for_case(1, 0).generic_derivation(2, 3, 5);
        let b = Sampler::for_case(1, 1).generic_derivation(2, 3, 5);
        assert_eq!(a, Sampler::for_case(1, 0).generic_derivation(2, 3, 5));
        assert_ne!(a, b);
    }

    #[test]
    fn keller_maps_have_unit_jacobian() {
        for seed in 0..5 {
            for n in 1..=3 {
                let f = random_map(seed, n, 3, 6, true);
                assert!(f.is_in_f1());
                let one = Series::one(n, 6);
                assert!(jacobian_det_direct(&f).eq_mod(&one, 5));
            }
        }
    }

    #[test]
    fn field_shapes() {
        let mut s = Sampler::new(3);
        for _ in 0..10 {
            assert!(s.divergence_free_derivation(3, 3, 6).divergence().is_zero());
            assert!(s.odd_derivation(2, 3, 6).coeffs().components().iter().all(Series::is_odd));
            assert!(s.even_derivation(2, 3, 6).coeffs().components().iter().all(Series::is_even));
            assert!(s.nilpotent_matrix(3).is_nilpotent());
            let h = s.bcw_first_row(3, 3, 6);
            let j = crate::jacobian::jacobian_matrix_direct(&h);
            assert!(j.try_mul(&j).unwrap().is_zero());
        }
        for _ in 0..20 {
            let c = s.coeff();
            assert!(c != int(0) && c <= int(3) && c >= int(-3));
        }
    }
}
