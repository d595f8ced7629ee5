//! Formal inverse `G` of a map `F` tangent to the identity, three ways.
//!
//! [`invert_solve`] is a direct degree-by-degree solve and serves as the
//! reference; [`invert_exp`] and [`invert_iterates`] go through the
//! generator and through compositional iterates respectively.

use crate::coeff::int;
use crate::error::Result;
use crate::generator::{binomial_difference, infer_generator_recursive, iterates};
use crate::operators::exp_flow;
use crate::series::{MapTuple, Series};

/// `G = exp(-A) z`.
pub fn invert_exp(f: &MapTuple) -> Result<MapTuple> {
    let a = infer_generator_recursive(f)?;
    exp_flow(&a.negate(), &int(1))
}

/// `G = z + sum_{k>=1} (1 - e^A)^k z`, expanded over the iterates `F^{[j]}`.
pub fn invert_iterates(f: &MapTuple) -> Result<MapTuple> {
    f.check_f1()?;
    let degree = f.degree() as usize;
    let its = iterates(f, degree)?;
    let mut acc = MapTuple::identity(f.nvars(), f.degree());
    for k in 1..=degree {
        acc = acc.try_add(&binomial_difference(&its, k))?;
    }
    Ok(acc)
}

/// Solves `F(G) = z` for `G = z + sum_{m>=2} G^{(m)}`.
///
/// With `F = z + N`, the degree-`m` slice of `F(G)` is `G^{(m)}` plus the
/// degree-`m` slice of `N(G_{<m})`, which only involves known slices.
pub fn invert_solve(f: &MapTuple) -> Result<MapTuple> {
    f.check_f1()?;
    let n = f.nvars();
    let degree = f.degree();
    let id = MapTuple::identity(n, degree);
    let nonlinear = f.try_sub(&id)?;
    let mut comps: Vec<Series> = id.clone().into_components();
    for m in 2..=degree {
        let low = MapTuple::new(comps.iter().map(|s| s.with_degree(m)).collect())?;
        let image = nonlinear.with_degree(m).compose(&low)?;
        for (i, slot) in comps.iter_mut().enumerate() {
            let slice = image.component(i).homogeneous(m).negate();
            *slot = &*slot + &slice.with_degree(degree);
        }
    }
    MapTuple::new(comps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x_plus_x2(degree: u32) -> MapTuple {
        MapTuple::new(vec![Series::from_terms(
            1,
            degree,
            [(vec![1], int(1)), (vec![2], int(1))],
        )
        .unwrap()])
        .unwrap()
    }

    fn shear(sign: i64) -> MapTuple {
        MapTuple::new(vec![
            Series::from_terms(2, 6, [(vec![1, 0], int(1)), (vec![0, 2], int(sign))]).unwrap(),
            Series::var(2, 6, 1),
        ])
        .unwrap()
    }

    #[test]
    fn identity_inverts_to_identity() {
        let id = MapTuple::identity(2, 5);
        assert_eq!(invert_exp(&id).unwrap(), id);
        assert_eq!(invert_iterates(&id).unwrap(), id);
        assert_eq!(invert_solve(&id).unwrap(), id);
    }

    #[test]
    fn shear_inverse() {
        let f = shear(1);
        let g = shear(-1);
        assert_eq!(invert_exp(&f).unwrap(), g);
        assert_eq!(invert_iterates(&f).unwrap(), g);
        assert_eq!(invert_solve(&f).unwrap(), g);
        assert_eq!(f.compose(&g).unwrap(), MapTuple::identity(2, 6));
        assert_eq!(g.compose(&f).unwrap(), MapTuple::identity(2, 6));
    }

    #[test]
    fn signed_catalan_numbers() {
        // g + g^2 = x  =>  g = x - x^2 + 2x^3 - 5x^4 + ...
        let expected = Series::from_terms(
            1,
            4,
            [(vec![1], int(1)), (vec![2], int(-1)), (vec![3], int(2)), (vec![4], int(-5))],
        )
        .unwrap();
        let f = x_plus_x2(4);
        for g in [invert_exp(&f), invert_iterates(&f), invert_solve(&f)] {
            assert_eq!(g.unwrap().component(0), &expected);
        }
    }
}
