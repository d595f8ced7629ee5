//! Recovering the generator `A` of a map `F = exp(A) z` tangent to the
//! identity.
//!
//! Two independent routes are implemented. The recursive route solves for
//! the homogeneous slices `a^{(m)}` one degree at a time; the logarithmic
//! route sums `-sum_k (1/k) (1 - e^A)^k z`, expressing every operator power
//! through the compositional iterates `F^{[j]} = e^{jA} z`.

use crate::coeff::{int, rat, Rational};
use crate::error::Result;
use crate::operators::{exp_flow, Derivation};
use crate::report::Report;
use crate::series::{binomial, MapTuple, Series};

/// Solves `exp(A) z = F` degree by degree.
///
/// The degree-`m` slice of `exp(A) z` is `a^{(m)}` plus terms built only from
/// slices below `m`, so `a^{(m)} = F^{(m)} - [exp(A_{<m}) z]^{(m)}`.
pub fn infer_generator_recursive(f: &MapTuple) -> Result<Derivation> {
    f.check_f1()?;
    let n = f.nvars();
    let degree = f.degree();
    let mut comps: Vec<Series> = vec![Series::zero(n, degree); n];
    for m in 2..=degree {
        let low = Derivation::from_components(comps.iter().map(|s| s.with_degree(m)).collect())?;
        let flow = exp_flow(&low, &int(1))?;
        for (i, slot) in comps.iter_mut().enumerate() {
            let target = f.component(i).with_degree(m).homogeneous(m);
            let slice = &target - &flow.component(i).homogeneous(m);
            *slot = &*slot + &slice.with_degree(degree);
        }
    }
    Derivation::from_components(comps)
}

/// `F^{[0]}, ..., F^{[count]}` by repeated composition.
pub fn iterates(f: &MapTuple, count: usize) -> Result<Vec<MapTuple>> {
    let mut out = Vec::with_capacity(count + 1);
    out.push(MapTuple::identity(f.nvars(), f.degree()));
    for j in 1..=count {
        let next = f.compose(&out[j - 1])?;
        out.push(next);
    }
    Ok(out)
}

/// `(1 - e^A)^k z = sum_j (-1)^j C(k, j) F^{[j]}`, given the iterates.
pub fn binomial_difference(iterates: &[MapTuple], k: usize) -> MapTuple {
    let first = &iterates[0];
    let mut acc = MapTuple::zero(first.nvars(), first.degree());
    for (j, fj) in iterates.iter().enumerate().take(k + 1) {
        let sign = if j % 2 == 0 { int(1) } else { int(-1) };
        let w: Rational = sign * binomial(k, j);
        acc = acc.try_add(&fj.scale(&w)).expect("iterates share a shape");
    }
    acc
}

/// `a = -sum_{k=1}^{D} (1/k) (1 - e^A)^k z`, a finite sum because each
/// difference has order at least `k + 1`.
pub fn infer_generator_log(f: &MapTuple) -> Result<Derivation> {
    f.check_f1()?;
    let degree = f.degree() as usize;
    let its = iterates(f, degree)?;
    let mut acc = MapTuple::zero(f.nvars(), f.degree());
    for k in 1..=degree {
        let w = rat(-1, k as i64);
        acc = acc.try_add(&binomial_difference(&its, k).scale(&w))?;
    }
    Derivation::new(acc)
}

/// Recomputes `exp(A) z_i` and compares it with `F_i` modulo `D`.
pub fn verify_generator(f: &MapTuple, a: &Derivation) -> Report {
    let degree = f.degree().min(a.degree());
    let mut report = Report::new(degree);
    let flow = match exp_flow(a, &int(1)) {
        Ok(flow) => flow,
        Err(e) => {
            report.push_detail("exp(A) z", false, e.to_string());
            return report;
        }
    };
    if f.nvars() != a.nvars() {
        report.push_detail("exp(A) z", false, "variable count mismatch");
        return report;
    }
    for i in 0..f.nvars() {
        let diff = f
            .component(i)
            .first_difference(flow.component(i))
            .filter(|&d| d <= degree);
        report.push_mismatch(format!("F{}", i + 1), diff);
    }
    report
}

/// Differences between the two inference routes; `None` when they agree.
pub fn compare_methods(f: &MapTuple) -> Result<Option<u32>> {
    let a = infer_generator_recursive(f)?;
    let b = infer_generator_log(f)?;
    Ok(a.coeffs().first_difference(b.coeffs()))
}
