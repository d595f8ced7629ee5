//! Sparse truncated multivariate power series.
//!
//! A [`Series`] in `n` variables with truncation degree `D` is exact modulo
//! the ideal of monomials of total degree `> D`. Every operation keeps that
//! guarantee, and mixing two different `D` is an error: [`Series::truncate`]
//! is the only way to coarsen.

mod text;

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff::{int, Coeff, Rational};
use crate::error::{JetError, Result};

pub use text::{format_with_names, series_from_json, series_to_json};

/// Per-variable degrees of a monomial.
///
/// Ordered by total degree first; within a degree, `z1` beats `z2` beats
/// `z3` lexicographically, so `z1^2 < z1*z2 < z2^2` in iteration order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Exponent {
    exps: Vec<u32>,
    total: u32,
}

impl Exponent {
    pub fn new(exps: Vec<u32>) -> Self {
        let total = exps.iter().sum();
        Exponent { exps, total }
    }

    pub fn zero(nvars: usize) -> Self {
        Exponent::new(vec![0; nvars])
    }

    /// The exponent of the single variable `z_{i+1}`.
    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Exponent { exps, total: 1 }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn total(&self) -> u32 {
        self.total
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    fn plus(&self, other: &Exponent) -> Exponent {
        Exponent {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            total: self.total + other.total,
        }
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total
            .cmp(&other.total)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Order of a series: lowest total degree carrying a nonzero coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u32),
    /// The zero series.
    Infinite,
}

impl Order {
    pub fn at_least(self, k: u32) -> bool {
        match self {
            Order::Finite(o) => o >= k,
            Order::Infinite => true,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(o) => write!(f, "{o}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

/// A power series in `nvars` variables, exact modulo total degree `> degree`.
#[derive(Clone, PartialEq, Debug)]
pub struct Series<C: Coeff = Rational> {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Exponent, C>,
}

impl<C: Coeff> Series<C> {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        assert!(nvars >= 1, "a series needs at least one variable");
        Series {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, degree: u32, c: C) -> Self {
        let mut s = Series::zero(nvars, degree);
        s.insert(Exponent::zero(nvars), c);
        s
    }

    pub fn one(nvars: usize, degree: u32) -> Self {
        Series::constant(nvars, degree, C::one())
    }

    /// The coordinate `z_{i+1}` (indices are zero-based).
    pub fn var(nvars: usize, degree: u32, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range");
        let mut s = Series::zero(nvars, degree);
        s.insert(Exponent::unit(nvars, i), C::one());
        s
    }

    pub fn monomial(nvars: usize, degree: u32, exps: Vec<u32>, c: C) -> Result<Self> {
        Series::from_terms(nvars, degree, [(exps, c)])
    }

    /// Sums the given terms; drops zeros and anything above `degree`.
    pub fn from_terms<I>(nvars: usize, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
    {
        let mut s = Series::zero(nvars, degree);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(JetError::ExponentLength {
                    got: exps.len(),
                    expected: nvars,
                });
            }
            s.accumulate(Exponent::new(exps), c);
        }
        s.prune();
        Ok(s)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Terms in graded order, lowest degree first.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C)> {
        self.terms.iter()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms
            .get(&Exponent::new(exps.to_vec()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.nvars])
    }

    /// Largest coefficient magnitude; zero for the zero series.
    pub fn max_norm(&self) -> f64 {
        self.terms.values().map(Coeff::magnitude).fold(0.0, f64::max)
    }

    fn insert(&mut self, e: Exponent, c: C) {
        if e.total <= self.degree && !c.is_zero() {
            self.terms.insert(e, c);
        }
    }

    /// Adds into an existing slot without pruning; callers finish with `prune`.
    fn accumulate(&mut self, e: Exponent, c: C) {
        if e.total > self.degree {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => o.get_mut().add_assign(&c),
        }
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub(crate) fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(JetError::NvarsMismatch(self.nvars, other.nvars));
        }
        if self.degree != other.degree {
            return Err(JetError::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        out.prune();
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        self.map_terms(|c| c.neg())
    }

    /// Truncated product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Series::zero(self.nvars, self.degree);
        let rhs: Vec<(&Exponent, &C)> = other.terms.iter().collect();
        for (ea, ca) in &self.terms {
            let budget = self.degree - ea.total;
            for (eb, cb) in &rhs {
                // rhs is sorted by total degree
                if eb.total > budget {
                    break;
                }
                out.accumulate(ea.plus(eb), ca.mul(cb));
            }
        }
        out.prune();
        Ok(out)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Series::zero(self.nvars, self.degree);
        }
        self.map_terms(|x| x.mul(c))
    }

    fn map_terms(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = Series::zero(self.nvars, self.degree);
        for (e, c) in &self.terms {
            out.insert(e.clone(), f(c));
        }
        out
    }

    /// Applies `f` to every coefficient, possibly changing the ring.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        let mut out = Series::zero(self.nvars, self.degree);
        for (e, c) in &self.terms {
            out.insert(e.clone(), f(c));
        }
        out
    }

    /// Formal `d/dz_{i+1}`. The result keeps the truncation degree, so its
    /// top homogeneous part is only as good as the caller's data above `D`.
    pub fn partial(&self, i: usize) -> Result<Self> {
        if i >= self.nvars {
            return Err(JetError::VariableOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        let mut out = Series::zero(self.nvars, self.degree);
        for (e, c) in &self.terms {
            let k = e.exps[i];
            if k == 0 {
                continue;
            }
            let mut exps = e.exps.clone();
            exps[i] -= 1;
            out.insert(Exponent::new(exps), c.mul(&C::from_int(k as i64)));
        }
        Ok(out)
    }

    /// `self(F_1, ..., F_n)` truncated at `D`.
    pub fn compose(&self, map: &MapTuple<C>) -> Result<Self> {
        let mut out = map.compose_many(std::slice::from_ref(self))?;
        Ok(out.pop().unwrap())
    }

    pub fn order(&self) -> Order {
        match self.terms.keys().next() {
            Some(e) => Order::Finite(e.total),
            None => Order::Infinite,
        }
    }

    /// The same terms read at another truncation degree. Raising the degree
    /// is only sound when `self` is known exactly, e.g. a polynomial whose
    /// degree does not exceed the current `D`; terms above a lower target
    /// are dropped.
    pub fn with_degree(&self, degree: u32) -> Self {
        Series {
            nvars: self.nvars,
            degree,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.total <= degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Highest total degree present; `None` for zero.
    pub fn max_total(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|e| e.total)
    }

    /// Drops all terms above `degree`; refuses to raise the degree.
    pub fn truncate(&self, degree: u32) -> Result<Self> {
        if degree > self.degree {
            return Err(JetError::TruncateUp {
                from: self.degree,
                to: degree,
            });
        }
        Ok(Series {
            nvars: self.nvars,
            degree,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.total <= degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        })
    }

    /// The homogeneous part of degree `k`, kept at the same truncation.
    pub fn homogeneous(&self, k: u32) -> Self {
        self.filter_terms(|e| e.total == k)
    }

    /// Terms with total degree in `lo..=hi`.
    pub fn degree_range(&self, lo: u32, hi: u32) -> Self {
        self.filter_terms(|e| e.total >= lo && e.total <= hi)
    }

    fn filter_terms(&self, keep: impl Fn(&Exponent) -> bool) -> Self {
        Series {
            nvars: self.nvars,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// `s(-z)`: flips the sign of every odd-degree term.
    pub fn reflect(&self) -> Self {
        let mut out = self.clone();
        for (e, c) in out.terms.iter_mut() {
            if e.total % 2 == 1 {
                *c = c.neg();
            }
        }
        out
    }

    /// Whether every term has odd total degree, i.e. `s(-z) = -s(z)`.
    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|e| e.total % 2 == 1)
    }

    /// Whether every term has even total degree, i.e. `s(-z) = s(z)`.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|e| e.total % 2 == 0)
    }

    /// Equality after truncating both sides to `degree`.
    pub fn eq_mod(&self, other: &Self, degree: u32) -> bool {
        self.nvars == other.nvars
            && self.degree.min(other.degree) >= degree
            && self.first_difference(other).is_none_or(|d| d > degree)
    }

    /// Lowest total degree at which the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<u32> {
        let lhs = self.terms.iter();
        let rhs = other.terms.iter();
        let mut best: Option<u32> = None;
        let mut note = |d: u32| best = Some(best.map_or(d, |b| b.min(d)));
        for (e, c) in lhs {
            if other.terms.get(e) != Some(c) {
                note(e.total);
            }
        }
        for (e, _) in rhs {
            if !self.terms.contains_key(e) {
                note(e.total);
            }
        }
        best
    }

    /// Raises `self` to the power `k` by repeated squaring.
    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Series::one(self.nvars, self.degree);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Series<Rational> {
    /// Lifts a rational series into another coefficient ring.
    pub fn lift<D: Coeff>(&self) -> Series<D> {
        self.map_coeffs(D::from_rational)
    }
}

impl<C: Coeff> Add for &Series<C> {
    type Output = Series<C>;

    fn add(self, rhs: &Series<C>) -> Series<C> {
        self.try_add(rhs).expect("series addition")
    }
}

impl<C: Coeff> Sub for &Series<C> {
    type Output = Series<C>;

    fn sub(self, rhs: &Series<C>) -> Series<C> {
        self.try_sub(rhs).expect("series subtraction")
    }
}

impl<C: Coeff> Mul for &Series<C> {
    type Output = Series<C>;

    fn mul(self, rhs: &Series<C>) -> Series<C> {
        self.try_mul(rhs).expect("series multiplication")
    }
}

impl<C: Coeff> Neg for &Series<C> {
    type Output = Series<C>;

    fn neg(self) -> Series<C> {
        self.negate()
    }
}

impl<C: Coeff> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("z{i}")).collect();
        f.write_str(&format_with_names(self, &names))
    }
}

/// An `n`-tuple of series in `n` variables sharing one truncation degree.
#[derive(Clone, PartialEq, Debug)]
pub struct MapTuple<C: Coeff = Rational> {
    components: Vec<Series<C>>,
}

impl<C: Coeff> MapTuple<C> {
    pub fn new(components: Vec<Series<C>>) -> Result<Self> {
        let first = components.first().ok_or(JetError::EmptyMap)?;
        for s in &components {
            first.check_compatible(s)?;
        }
        if first.nvars != components.len() {
            return Err(JetError::ArityMismatch {
                components: components.len(),
                nvars: first.nvars,
            });
        }
        Ok(MapTuple { components })
    }

    pub fn identity(n: usize, degree: u32) -> Self {
        MapTuple {
            components: (0..n).map(|i| Series::var(n, degree, i)).collect(),
        }
    }

    pub fn zero(n: usize, degree: u32) -> Self {
        MapTuple {
            components: vec![Series::zero(n, degree); n],
        }
    }

    pub fn components(&self) -> &[Series<C>] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Series<C>> {
        self.components
    }

    pub fn component(&self, i: usize) -> &Series<C> {
        &self.components[i]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn degree(&self) -> u32 {
        self.components[0].degree
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Series::is_zero)
    }

    /// Minimum order over the components.
    pub fn order(&self) -> Order {
        self.components.iter().map(Series::order).min().unwrap()
    }

    /// Checks `F_i = z_i + (terms of degree >= 2)`.
    pub fn check_f1(&self) -> Result<()> {
        let n = self.nvars();
        for (i, f) in self.components.iter().enumerate() {
            let low = f.degree_range(0, 1);
            let expected = if self.degree() >= 1 {
                Series::var(n, self.degree(), i)
            } else {
                Series::zero(n, self.degree())
            };
            if low != expected {
                return Err(JetError::NotInF1(format!(
                    "component {} has constant or linear part {} instead of z{}",
                    i + 1,
                    low,
                    i + 1
                )));
            }
        }
        Ok(())
    }

    pub fn is_in_f1(&self) -> bool {
        self.check_f1().is_ok()
    }

    fn map(&self, f: impl Fn(&Series<C>) -> Series<C>) -> Self {
        MapTuple {
            components: self.components.iter().map(f).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&Series<C>, &Series<C>) -> Result<Series<C>>,
    ) -> Result<Self> {
        if self.len() != other.len() {
            return Err(JetError::NvarsMismatch(self.len(), other.len()));
        }
        Ok(MapTuple {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| f(a, b))
                .collect::<Result<_>>()?,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, Series::try_add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, Series::try_sub)
    }

    pub fn negate(&self) -> Self {
        self.map(Series::negate)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|s| s.scale(c))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MapTuple<D> {
        MapTuple {
            components: self.components.iter().map(|s| s.map_coeffs(&f)).collect(),
        }
    }

    pub fn truncate(&self, degree: u32) -> Result<Self> {
        Ok(MapTuple {
            components: self
                .components
                .iter()
                .map(|s| s.truncate(degree))
                .collect::<Result<_>>()?,
        })
    }

    pub fn homogeneous(&self, k: u32) -> Self {
        self.map(|s| s.homogeneous(k))
    }

    /// See [`Series::with_degree`].
    pub fn with_degree(&self, degree: u32) -> Self {
        self.map(|s| s.with_degree(degree))
    }

    pub fn degree_range(&self, lo: u32, hi: u32) -> Self {
        self.map(|s| s.degree_range(lo, hi))
    }

    /// `F(-z)`.
    pub fn reflect(&self) -> Self {
        self.map(Series::reflect)
    }

    pub fn eq_mod(&self, other: &Self, degree: u32) -> bool {
        self.len() == other.len()
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| a.eq_mod(b, degree))
    }

    pub fn first_difference(&self, other: &Self) -> Option<u32> {
        self.components
            .iter()
            .zip(&other.components)
            .filter_map(|(a, b)| a.first_difference(b))
            .min()
    }

    /// `self ∘ inner`, i.e. `inner` substituted into every component.
    pub fn compose(&self, inner: &MapTuple<C>) -> Result<Self> {
        Ok(MapTuple {
            components: inner.compose_many(&self.components)?,
        })
    }

    /// Substitutes `self` into each of `outer`, sharing monomial evaluations
    /// across all of them.
    pub(crate) fn compose_many(&self, outer: &[Series<C>]) -> Result<Vec<Series<C>>> {
        let n = self.nvars();
        let degree = self.degree();
        for u in outer {
            if u.nvars != n {
                return Err(JetError::NvarsMismatch(u.nvars, n));
            }
            if u.degree != degree {
                return Err(JetError::DegreeMismatch(u.degree, degree));
            }
        }
        for (i, f) in self.components.iter().enumerate() {
            if !f.constant_term().is_zero() {
                return Err(JetError::ConstantTerm(i));
            }
        }
        let mut memo: HashMap<Exponent, Series<C>> = HashMap::new();
        memo.insert(Exponent::zero(n), Series::one(n, degree));
        let mut out = Vec::with_capacity(outer.len());
        for u in outer {
            let mut acc = Series::zero(n, degree);
            for (e, c) in &u.terms {
                self.ensure_monomial(e, &mut memo);
                let value = &memo[e];
                for (e2, c2) in &value.terms {
                    acc.accumulate(e2.clone(), c.mul(c2));
                }
            }
            acc.prune();
            out.push(acc);
        }
        Ok(out)
    }

    fn ensure_monomial(&self, e: &Exponent, memo: &mut HashMap<Exponent, Series<C>>) {
        if memo.contains_key(e) {
            return;
        }
        let j = e.exps.iter().rposition(|&k| k > 0).unwrap();
        let mut prev = e.exps.clone();
        prev[j] -= 1;
        let prev = Exponent::new(prev);
        self.ensure_monomial(&prev, memo);
        let value = &memo[&prev] * &self.components[j];
        memo.insert(e.clone(), value);
    }

    /// The `k`-fold self composition `F^{[k]}`; `k = 0` is the identity.
    pub fn iterate(&self, k: usize) -> Result<Self> {
        let mut acc = MapTuple::identity(self.nvars(), self.degree());
        for _ in 0..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }
}

impl MapTuple<Rational> {
    pub fn lift<D: Coeff>(&self) -> MapTuple<D> {
        self.map_coeffs(D::from_rational)
    }
}

impl<C: Coeff> std::ops::Index<usize> for MapTuple<C> {
    type Output = Series<C>;

    fn index(&self, i: usize) -> &Series<C> {
        &self.components[i]
    }
}

/// Binomial coefficient as an exact rational.
pub(crate) fn binomial(k: usize, j: usize) -> Rational {
    let mut acc = int(1);
    for i in 0..j {
        acc = acc * int((k - i) as i64) / int((i + 1) as i64);
    }
    acc
}
