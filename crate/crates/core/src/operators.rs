//! Derivations `A = sum_i a_i d/dz_i` and their exponentials.
//!
//! The exact exponentials here are finite sums. When every `a_i` has order
//! at least 2, `A` raises the order of anything it touches, so `A^k u`
//! vanishes modulo degree `D` once `k > D`. When the linear part of `a` is a
//! nilpotent matrix, `A` is nilpotent on each homogeneous degree and the sum
//! still terminates. Anything else has transcendental coefficients and is
//! only available through [`exp_numeric`].

use crate::coeff::{rat, Coeff, Rational};
use crate::error::{JetError, Result};
use crate::matrix::{ConstantMatrix, SeriesMatrix};
use crate::series::{MapTuple, Order, Series};

/// Default stopping threshold of [`exp_numeric`].
pub const DEFAULT_EPS: f64 = 1e-13;
/// Default term cap of [`exp_numeric`].
pub const DEFAULT_KMAX: usize = 500;

/// A formal vector field `a(z) d/dz` with no constant term.
#[derive(Clone, PartialEq, Debug)]
pub struct Derivation<C: Coeff = Rational> {
    coeffs: MapTuple<C>,
    min_order: Order,
}

/// Why the exact exponential of a derivation terminates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    /// Every component has order >= 2.
    Graded,
    /// Order 1 with a nilpotent linear part.
    NilpotentLinear,
}

impl<C: Coeff> Derivation<C> {
    pub fn new(coeffs: MapTuple<C>) -> Result<Self> {
        let min_order = coeffs.order();
        if !min_order.at_least(1) {
            return Err(JetError::ConstantVectorField);
        }
        Ok(Derivation { coeffs, min_order })
    }

    pub fn from_components(components: Vec<Series<C>>) -> Result<Self> {
        Derivation::new(MapTuple::new(components)?)
    }

    pub fn zero(n: usize, degree: u32) -> Self {
        Derivation {
            coeffs: MapTuple::zero(n, degree),
            min_order: Order::Infinite,
        }
    }

    pub fn coeffs(&self) -> &MapTuple<C> {
        &self.coeffs
    }

    pub fn component(&self, i: usize) -> &Series<C> {
        self.coeffs.component(i)
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.nvars()
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.degree()
    }

    pub fn min_order(&self) -> Order {
        self.min_order
    }

    pub fn is_zero(&self) -> bool {
        self.min_order == Order::Infinite
    }

    /// `A u = sum_i a_i du/dz_i`.
    pub fn apply(&self, u: &Series<C>) -> Result<Series<C>> {
        self.coeffs.component(0).check_compatible(u)?;
        let mut acc = Series::zero(u.nvars(), u.degree());
        for (i, a) in self.coeffs.components().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            acc = &acc + &(a * &u.partial(i)?);
        }
        Ok(acc)
    }

    /// Entrywise action on a matrix of series.
    pub fn apply_matrix(&self, m: &SeriesMatrix<C>) -> Result<SeriesMatrix<C>> {
        m.try_map_entries(|s| self.apply(s))
    }

    /// `sum_i da_i/dz_i`.
    pub fn divergence(&self) -> Series<C> {
        let mut acc = Series::zero(self.nvars(), self.degree());
        for (i, a) in self.coeffs.components().iter().enumerate() {
            acc = &acc + &a.partial(i).expect("index within range");
        }
        acc
    }

    /// The Jacobian matrix `Ja = (da_i/dz_j)`.
    pub fn jacobian(&self) -> SeriesMatrix<C> {
        let n = self.nvars();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.component(i).partial(j).expect("index within range"))
                    .collect()
            })
            .collect();
        SeriesMatrix::new(rows).expect("square by construction")
    }

    /// `M` with `a(z) = Mz + (higher order)`.
    pub fn linear_part(&self) -> ConstantMatrix<C> {
        let n = self.nvars();
        ConstantMatrix::from_fn(n, |i, j| {
            let mut e = vec![0; n];
            e[j] = 1;
            self.component(i).coeff(&e)
        })
    }

    /// Decides which exact regime applies, if any.
    pub fn exactness(&self) -> Result<Exactness> {
        if self.min_order.at_least(2) {
            Ok(Exactness::Graded)
        } else if self.linear_part().is_nilpotent() {
            Ok(Exactness::NilpotentLinear)
        } else {
            Err(JetError::NotExact)
        }
    }

    /// Upper bound on the number of nonzero terms of any exact exponential
    /// built from this derivation.
    fn term_bound(&self, exactness: Exactness) -> usize {
        let d = self.degree() as usize;
        let n = self.nvars();
        match exactness {
            Exactness::Graded => d + 1,
            // per degree k: nilpotency index of the vector-field part on
            // k-forms is at most k(n-1)+1, and right multiplication by a
            // nilpotent constant adds at most n-1
            Exactness::NilpotentLinear => (0..=d).map(|k| k * (n - 1) + n).sum(),
        }
    }

    pub fn negate(&self) -> Self {
        Derivation {
            coeffs: self.coeffs.negate(),
            min_order: self.min_order,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Derivation::new(self.coeffs.scale(c)).expect("scaling keeps the order")
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Derivation<D> {
        Derivation::new(self.coeffs.map_coeffs(f)).expect("no constant term appears")
    }

    pub fn truncate(&self, degree: u32) -> Result<Self> {
        Derivation::new(self.coeffs.truncate(degree)?)
    }

    /// Homogeneous slice `a^{(k)}` as a derivation.
    pub fn homogeneous(&self, k: u32) -> Self {
        Derivation::new(self.coeffs.homogeneous(k)).expect("slice has no constant term")
    }

    /// The slices of degree `lo..=hi` as one derivation.
    pub fn degree_range(&self, lo: u32, hi: u32) -> Self {
        Derivation::new(self.coeffs.degree_range(lo.max(1), hi)).expect("no constant term")
    }

    /// See [`Series::with_degree`].
    pub fn with_degree(&self, degree: u32) -> Self {
        Derivation::new(self.coeffs.with_degree(degree)).expect("no constant term")
    }

    /// Commutator `[A, B] = AB - BA`, whose coefficients are `A b_i - B a_i`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        let comps = (0..self.nvars())
            .map(|i| self.apply(other.component(i))?.try_sub(&other.apply(self.component(i))?))
            .collect::<Result<Vec<_>>>()?;
        Derivation::from_components(comps)
    }

    pub fn eq_mod(&self, other: &Self, degree: u32) -> bool {
        self.coeffs.eq_mod(&other.coeffs, degree)
    }
}

impl Derivation<Rational> {
    pub fn lift<D: Coeff>(&self) -> Derivation<D> {
        self.map_coeffs(D::from_rational)
    }
}

/// Things the exponential loop sums: series and series matrices.
trait Summand<C: Coeff>: Clone {
    fn vanishes(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, c: &C) -> Self;
}

impl<C: Coeff> Summand<C> for Series<C> {
    fn vanishes(&self) -> bool {
        self.is_zero()
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn times(&self, c: &C) -> Self {
        self.scale(c)
    }
}

impl<C: Coeff> Summand<C> for SeriesMatrix<C> {
    fn vanishes(&self) -> bool {
        self.is_zero()
    }

    fn plus(&self, other: &Self) -> Self {
        self.try_add(other).expect("same shape")
    }

    fn times(&self, c: &C) -> Self {
        self.scale(c)
    }
}

/// `sum_k t^k L^k x / k!`, which must terminate within `bound` terms.
fn exponential<C: Coeff, X: Summand<C>>(
    x: &X,
    t: &C,
    bound: usize,
    step: impl Fn(&X) -> Result<X>,
) -> Result<X> {
    let mut sum = x.clone();
    let mut term = x.clone();
    let mut k = 0usize;
    while !term.vanishes() {
        k += 1;
        if k > bound {
            return Err(JetError::NonTerminating(bound));
        }
        // running term t^k L^k x / k!
        let weight = t.mul(&C::from_rational(&rat(1, k as i64)));
        term = step(&term)?.times(&weight);
        sum = sum.plus(&term);
    }
    Ok(sum)
}

/// `exp(tA) u`, exact modulo degree `D`.
pub fn exp_apply<C: Coeff>(a: &Derivation<C>, u: &Series<C>, t: &C) -> Result<Series<C>> {
    let exactness = a.exactness()?;
    a.component(0).check_compatible(u)?;
    exponential(u, t, a.term_bound(exactness), |x| a.apply(x))
}

/// `exp(tA)` applied to every component of a tuple.
pub fn exp_apply_map<C: Coeff>(a: &Derivation<C>, map: &MapTuple<C>, t: &C) -> Result<MapTuple<C>> {
    MapTuple::new(
        map.components()
            .iter()
            .map(|u| exp_apply(a, u, t))
            .collect::<Result<_>>()?,
    )
}

/// `exp(tA)z`, the flow map at time `t`.
pub fn exp_flow<C: Coeff>(a: &Derivation<C>, t: &C) -> Result<MapTuple<C>> {
    exp_apply_map(a, &MapTuple::identity(a.nvars(), a.degree()), t)
}

/// `exp(t(A + g)) u` where `g` acts by multiplication.
pub fn exp_apply_augmented_scalar<C: Coeff>(
    a: &Derivation<C>,
    g: &Series<C>,
    u: &Series<C>,
    t: &C,
) -> Result<Series<C>> {
    let exactness = a.exactness()?;
    a.component(0).check_compatible(u)?;
    a.component(0).check_compatible(g)?;
    if !g.order().at_least(1) {
        return Err(JetError::AugmentationOrder);
    }
    exponential(u, t, a.term_bound(exactness), |x| {
        a.apply(x)?.try_add(&g.try_mul(x)?)
    })
}

/// `exp(t(A + R_Ja)) U` where `R_Ja` multiplies by `ja` from the right and
/// `A` acts entrywise.
pub fn exp_apply_augmented_matrix<C: Coeff>(
    a: &Derivation<C>,
    ja: &SeriesMatrix<C>,
    u: &SeriesMatrix<C>,
    t: &C,
) -> Result<SeriesMatrix<C>> {
    let exactness = a.exactness()?;
    let n = a.nvars();
    if ja.dim() != n || u.dim() != n {
        return Err(JetError::MatrixShape(format!(
            "expected {n}x{n} matrices, got Ja {0}x{0} and U {1}x{1}",
            ja.dim(),
            u.dim()
        )));
    }
    a.component(0).check_compatible(ja.get(0, 0))?;
    a.component(0).check_compatible(u.get(0, 0))?;
    exponential(u, t, a.term_bound(exactness), |x| {
        a.apply_matrix(x)?.try_add(&x.try_mul(ja)?)
    })
}

/// Partial sums of `sum_k t^k A^k u / k!` in floating point, stopping once
/// the max-norm of the latest term is at most `eps`.
pub fn exp_numeric(
    a: &Derivation<f64>,
    u: &Series<f64>,
    t: f64,
    eps: f64,
    kmax: usize,
) -> Result<Series<f64>> {
    a.component(0).check_compatible(u)?;
    let mut sum = u.clone();
    let mut term = u.clone();
    let mut norm = term.max_norm();
    if norm <= eps {
        return Ok(sum);
    }
    for k in 1..=kmax {
        term = a.apply(&term)?.scale(&(t / k as f64));
        sum = &sum + &term;
        norm = term.max_norm();
        if norm <= eps {
            return Ok(sum);
        }
    }
    Err(JetError::NonConvergence { kmax, norm })
}
