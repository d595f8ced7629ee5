//! Square matrices of series and of plain coefficients.

use std::fmt;

use serde_json::{json, Value};

use crate::coeff::{Coeff, Rational};
use crate::error::{JetError, Result};
use crate::series::{MapTuple, Series};

/// An `n x n` matrix whose entries are series with a common variable count
/// and truncation degree. Stored row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct SeriesMatrix<C: Coeff = Rational> {
    n: usize,
    entries: Vec<Series<C>>,
}

impl<C: Coeff> SeriesMatrix<C> {
    pub fn new(rows: Vec<Vec<Series<C>>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(JetError::MatrixShape("empty matrix".into()));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(JetError::MatrixShape(format!(
                "row {bad} has {} entries, expected {n}",
                rows[bad].len()
            )));
        }
        let entries: Vec<Series<C>> = rows.into_iter().flatten().collect();
        for e in &entries[1..] {
            entries[0].check_compatible(e)?;
        }
        Ok(SeriesMatrix { n, entries })
    }

    fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Series<C>) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        SeriesMatrix { n, entries }
    }

    fn try_from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Result<Series<C>>) -> Result<Self> {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j)?);
            }
        }
        Ok(SeriesMatrix { n, entries })
    }

    pub fn identity(n: usize, nvars: usize, degree: u32) -> Self {
        Self::from_fn(n, |i, j| {
            if i == j {
                Series::one(nvars, degree)
            } else {
                Series::zero(nvars, degree)
            }
        })
    }

    pub fn zero(n: usize, nvars: usize, degree: u32) -> Self {
        Self::from_fn(n, |_, _| Series::zero(nvars, degree))
    }

    /// Lifts a constant matrix to constant series.
    pub fn from_constant(m: &ConstantMatrix<C>, nvars: usize, degree: u32) -> Self {
        Self::from_fn(m.dim(), |i, j| Series::constant(nvars, degree, m.get(i, j).clone()))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.entries[0].nvars()
    }

    pub fn degree(&self) -> u32 {
        self.entries[0].degree()
    }

    pub fn get(&self, i: usize, j: usize) -> &Series<C> {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Series<C>>> {
        self.entries.chunks(self.n).map(<[_]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Series::is_zero)
    }

    /// The constant terms of every entry.
    pub fn constant_part(&self) -> ConstantMatrix<C> {
        ConstantMatrix::from_fn(self.n, |i, j| self.get(i, j).constant_term())
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(JetError::MatrixShape(format!("{0}x{0} vs {1}x{1}", self.n, other.n)));
        }
        self.entries[0].check_compatible(&other.entries[0])
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Self::try_from_fn(self.n, |i, j| self.get(i, j).try_add(other.get(i, j)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Self::try_from_fn(self.n, |i, j| self.get(i, j).try_sub(other.get(i, j)))
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map_entries(|s| s.scale(c))
    }

    pub fn map_entries(&self, f: impl Fn(&Series<C>) -> Series<C>) -> Self {
        SeriesMatrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map_entries(&self, f: impl Fn(&Series<C>) -> Result<Series<C>>) -> Result<Self> {
        Ok(SeriesMatrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> SeriesMatrix<D> {
        SeriesMatrix {
            n: self.n,
            entries: self.entries.iter().map(|s| s.map_coeffs(&f)).collect(),
        }
    }

    /// Truncated matrix product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let n = self.n;
        Self::try_from_fn(n, |i, j| {
            let mut acc = Series::zero(self.nvars(), self.degree());
            for k in 0..n {
                acc = acc.try_add(&self.get(i, k).try_mul(other.get(k, j))?)?;
            }
            Ok(acc)
        })
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[Series<C>]) -> Result<Vec<Series<C>>> {
        if v.len() != self.n {
            return Err(JetError::MatrixShape(format!(
                "vector of length {} against a {1}x{1} matrix",
                v.len(),
                self.n
            )));
        }
        (0..self.n)
            .map(|i| {
                let mut acc = Series::zero(self.nvars(), self.degree());
                for (k, vk) in v.iter().enumerate() {
                    acc = acc.try_add(&self.get(i, k).try_mul(vk)?)?;
                }
                Ok(acc)
            })
            .collect()
    }

    /// Entrywise substitution `U(F(z))`.
    pub fn compose(&self, map: &MapTuple<C>) -> Result<Self> {
        let entries = map.compose_many(&self.entries)?;
        Ok(SeriesMatrix { n: self.n, entries })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn truncate(&self, degree: u32) -> Result<Self> {
        self.try_map_entries(|s| s.truncate(degree))
    }

    pub fn eq_mod(&self, other: &Self, degree: u32) -> bool {
        self.n == other.n
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.eq_mod(b, degree))
    }

    pub fn first_difference(&self, other: &Self) -> Option<u32> {
        self.entries
            .iter()
            .zip(&other.entries)
            .filter_map(|(a, b)| a.first_difference(b))
            .min()
    }

    /// Determinant: cofactor expansion up to 4x4, Berkowitz above.
    /// Both are division free, so they work over any coefficient ring.
    pub fn det(&self) -> Series<C> {
        if self.n <= 4 {
            let cols: Vec<usize> = (0..self.n).collect();
            self.laplace(0, &cols)
        } else {
            self.berkowitz()
        }
    }

    fn laplace(&self, row: usize, cols: &[usize]) -> Series<C> {
        if cols.len() == 1 {
            return self.get(row, cols[0]).clone();
        }
        let mut acc = Series::zero(self.nvars(), self.degree());
        for (k, &c) in cols.iter().enumerate() {
            let entry = self.get(row, c);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = entry * &self.laplace(row + 1, &rest);
            acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    /// Division-free characteristic polynomial recursion; returns
    /// `(-1)^n p_n` where `det(xI - A) = sum_k p_k x^(n-k)`.
    fn berkowitz(&self) -> Series<C> {
        let n = self.n;
        let nv = self.nvars();
        let d = self.degree();
        let one = Series::one(nv, d);
        let mut vec = vec![one.clone(), self.get(n - 1, n - 1).negate()];
        for k in (0..n - 1).rev() {
            let m = n - k - 1;
            // coefficients c_0 = 1, c_1 = -a, c_{j+2} = -R M^j C
            let mut col = vec![one.clone(), self.get(k, k).negate()];
            let mut mc: Vec<Series<C>> = (k + 1..n).map(|i| self.get(i, k).clone()).collect();
            for _ in 0..m {
                let mut rmc = Series::zero(nv, d);
                for (idx, j) in (k + 1..n).enumerate() {
                    rmc = &rmc + &(self.get(k, j) * &mc[idx]);
                }
                col.push(rmc.negate());
                mc = (k + 1..n)
                    .map(|i| {
                        let mut acc = Series::zero(nv, d);
                        for (idx, j) in (k + 1..n).enumerate() {
                            acc = &acc + &(self.get(i, j) * &mc[idx]);
                        }
                        acc
                    })
                    .collect();
            }
            let mut next = Vec::with_capacity(m + 2);
            for i in 0..m + 2 {
                let mut acc = Series::zero(nv, d);
                for (j, v) in vec.iter().enumerate().take(i.min(m) + 1) {
                    acc = &acc + &(&col[i - j] * v);
                }
                next.push(acc);
            }
            vec = next;
        }
        let last = vec.pop().unwrap();
        if n.is_multiple_of(2) {
            last
        } else {
            last.negate()
        }
    }

    /// `{"n":n,"entries":[[Series, ..], ..]}`.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .entries
            .chunks(self.n)
            .map(|r| Value::Array(r.iter().map(Series::to_json).collect()))
            .collect();
        json!({"n": self.n, "entries": rows})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let rows = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| JetError::Json("missing entries array".into()))?;
        let m = SeriesMatrix::new(
            rows.iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| JetError::Json("matrix rows must be arrays".into()))?
                        .iter()
                        .map(Series::from_json)
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?,
        )?;
        if v.get("n").and_then(Value::as_u64) != Some(m.n as u64) {
            return Err(JetError::Json("field n does not match the entries".into()));
        }
        Ok(m)
    }
}

impl<C: Coeff> fmt::Display for SeriesMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A dense square matrix of coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct ConstantMatrix<C: Coeff = Rational> {
    n: usize,
    entries: Vec<C>,
}

impl<C: Coeff> ConstantMatrix<C> {
    pub fn new(rows: Vec<Vec<C>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(JetError::MatrixShape("constant matrix must be square and non-empty".into()));
        }
        Ok(ConstantMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        ConstantMatrix { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { C::one() } else { C::zero() })
    }

    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_, _| C::zero())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<C>> {
        self.entries.chunks(self.n).map(<[C]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Coeff::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "constant matrix dimension mismatch");
        Self::from_fn(self.n, |i, j| {
            let mut acc = C::zero();
            for k in 0..self.n {
                acc.add_assign(&self.get(i, k).mul(other.get(k, j)));
            }
            acc
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "constant matrix dimension mismatch");
        Self::from_fn(self.n, |i, j| self.get(i, j).add(other.get(i, j)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&C::one().neg()))
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_fn(self.n, |i, j| self.get(i, j).mul(c))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> C {
        let mut acc = C::zero();
        for i in 0..self.n {
            acc.add_assign(self.get(i, i));
        }
        acc
    }

    /// `MN - NM`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// `M^n = 0`, which is equivalent to nilpotency for an `n x n` matrix.
    pub fn is_nilpotent(&self) -> bool {
        let mut p = self.clone();
        for _ in 1..self.n {
            if p.is_zero() {
                return true;
            }
            p = p.mul(self);
        }
        p.is_zero()
    }

    pub fn det(&self) -> C {
        SeriesMatrix::from_constant(self, 1, 0).det().constant_term()
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> ConstantMatrix<D> {
        ConstantMatrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .entries
            .chunks(self.n)
            .map(|r| Value::Array(r.iter().map(Coeff::to_json).collect()))
            .collect();
        json!({"n": self.n, "entries": rows})
    }
}

impl<C: Coeff> fmt::Display for ConstantMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .chunks(self.n)
            .map(|r| {
                r.iter()
                    .map(|c| Series::constant(1, 0, c.clone()).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{}", rows.join("; "))
    }
}
