//! Jacobian matrices and determinants, directly and through exponentials.
//!
//! A partial derivative of data known modulo degree `D` is only known modulo
//! `D - 1`, so every routine here that differentiates its input certifies one
//! degree less than it was given.

use serde::Serialize;

use crate::coeff::Coeff;
use crate::error::Result;
use crate::generator::infer_generator_recursive;
use crate::matrix::SeriesMatrix;
use crate::operators::{exp_apply_augmented_matrix, exp_apply_augmented_scalar, Derivation};
use crate::series::{MapTuple, Series};

/// `JF = (dF_i/dz_j)`.
pub fn jacobian_matrix_direct<C: Coeff>(f: &MapTuple<C>) -> SeriesMatrix<C> {
    let n = f.nvars();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| f.component(i).partial(j).expect("index within range"))
                .collect()
        })
        .collect();
    SeriesMatrix::new(rows).expect("square by construction")
}

/// `det JF`.
pub fn jacobian_det_direct<C: Coeff>(f: &MapTuple<C>) -> Series<C> {
    jacobian_matrix_direct(f).det()
}

/// `J(F_t) = exp(t(A + div a)) 1`.
pub fn jacobian_det_exp<C: Coeff>(a: &Derivation<C>, t: &C) -> Result<Series<C>> {
    jacobian_det_exp_general(a, &Series::one(a.nvars(), a.degree()), t)
}

/// `exp(t(A + div a)) u`, which equals `u(F_t) J(F_t)`.
pub fn jacobian_det_exp_general<C: Coeff>(a: &Derivation<C>, u: &Series<C>, t: &C) -> Result<Series<C>> {
    exp_apply_augmented_scalar(a, &a.divergence(), u, t)
}

/// `exp(t(A + R_Ja)) U`, which equals `U(F_t) JF_t`; with `U = Id` this is
/// the Jacobian matrix of the flow.
pub fn jacobian_matrix_exp<C: Coeff>(
    a: &Derivation<C>,
    u: &SeriesMatrix<C>,
    t: &C,
) -> Result<SeriesMatrix<C>> {
    exp_apply_augmented_matrix(a, &a.jacobian(), u, t)
}

/// Keller test of a map tangent to the identity, computed two independent
/// ways: the determinant of `JF`, and the divergence of the generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KellerReport {
    pub jac_is_one: bool,
    pub div_is_zero: bool,
    /// Both flags hold modulo total degree above this.
    pub degree: u32,
}

impl KellerReport {
    /// Whether the two computations agree, as they must.
    pub fn consistent(&self) -> bool {
        self.jac_is_one == self.div_is_zero
    }
}

pub fn keller_check(f: &MapTuple) -> Result<KellerReport> {
    f.check_f1()?;
    let degree = f.degree().saturating_sub(1);
    let n = f.nvars();
    let one = Series::one(n, f.degree());
    let jac_is_one = jacobian_det_direct(f).eq_mod(&one, degree);
    let div = infer_generator_recursive(f)?.divergence();
    let div_is_zero = div.eq_mod(&Series::zero(n, f.degree()), degree);
    Ok(KellerReport {
        jac_is_one,
        div_is_zero,
        degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{int, Rational, TPoly};
    use crate::operators::exp_flow;

    fn shear_field(degree: u32) -> Derivation {
        Derivation::from_components(vec![
            Series::monomial(2, degree, vec![0, 2], int(1)).unwrap(),
            Series::zero(2, degree),
        ])
        .unwrap()
    }

    fn x_squared(degree: u32) -> Derivation {
        Derivation::from_components(vec![Series::monomial(1, degree, vec![2], int(1)).unwrap()])
            .unwrap()
    }

    fn shear_jacobian(degree: u32) -> SeriesMatrix {
        SeriesMatrix::new(vec![
            vec![Series::one(2, degree), Series::monomial(2, degree, vec![0, 1], int(2)).unwrap()],
            vec![Series::zero(2, degree), Series::one(2, degree)],
        ])
        .unwrap()
    }

    #[test]
    fn direct_jacobians() {
        let id = MapTuple::<Rational>::identity(3, 4);
        assert_eq!(jacobian_matrix_direct(&id), SeriesMatrix::identity(3, 3, 4));
        assert_eq!(jacobian_det_direct(&id), Series::one(3, 4));

        let f = exp_flow(&shear_field(5), &int(1)).unwrap();
        assert_eq!(jacobian_matrix_direct(&f), shear_jacobian(5));
        assert_eq!(jacobian_det_direct(&f), Series::one(2, 5));
        assert_eq!(
            jacobian_matrix_direct(shear_field(5).coeffs()),
            shear_field(5).jacobian()
        );
    }

    #[test]
    fn exp_formulas_on_shear() {
        let a = shear_field(5);
        assert_eq!(jacobian_det_exp(&a, &int(1)).unwrap(), Series::one(2, 5));
        let u = Series::var(2, 5, 0);
        let expected = Series::from_terms(2, 5, [(vec![1, 0], int(1)), (vec![0, 2], int(1))]).unwrap();
        assert_eq!(jacobian_det_exp_general(&a, &u, &int(1)).unwrap(), expected);
        let id = SeriesMatrix::identity(2, 2, 5);
        assert_eq!(jacobian_matrix_exp(&a, &id, &int(1)).unwrap(), shear_jacobian(5));
        assert_eq!(jacobian_matrix_exp(&Derivation::zero(2, 5), &id, &int(1)).unwrap(), id);
    }

    #[test]
    fn one_variable_flow_jacobian() {
        // F_t = x / (1 - tx), so dF_t/dx = 1 / (1 - tx)^2
        let a = x_squared(2);
        let direct = Series::from_terms(1, 2, [(vec![0], int(1)), (vec![1], int(2)), (vec![2], int(3))]).unwrap();
        assert_eq!(jacobian_det_exp(&a, &int(1)).unwrap(), direct);

        let at = a.lift::<TPoly>();
        let t = TPoly::t();
        let sym = jacobian_det_exp(&at, &t).unwrap();
        let two_t = TPoly::new(vec![int(0), int(2)]);
        let three_t2 = TPoly::new(vec![int(0), int(0), int(3)]);
        assert_eq!(sym.coeff(&[0]), TPoly::constant(int(1)));
        assert_eq!(sym.coeff(&[1]), two_t);
        assert_eq!(sym.coeff(&[2]), three_t2);

        // the direct side needs the flow one degree higher
        let flow = exp_flow(&x_squared(3).lift::<TPoly>(), &t).unwrap();
        let det = jacobian_det_direct(&flow);
        assert!(det.truncate(2).unwrap() == sym);
    }

    #[test]
    fn keller_flags() {
        let shear = exp_flow(&shear_field(8), &int(1)).unwrap();
        let r = keller_check(&shear).unwrap();
        assert_eq!(r, KellerReport { jac_is_one: true, div_is_zero: true, degree: 7 });

        let f = MapTuple::new(vec![Series::from_terms(1, 8, [(vec![1], int(1)), (vec![2], int(1))]).unwrap()])
            .unwrap();
        let r = keller_check(&f).unwrap();
        assert!(!r.jac_is_one && !r.div_is_zero && r.consistent());

        let r = keller_check(&MapTuple::identity(3, 4)).unwrap();
        assert!(r.jac_is_one && r.div_is_zero);
    }

    #[test]
    fn keller_json_shape() {
        let r = KellerReport { jac_is_one: true, div_is_zero: true, degree: 8 };
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"jac_is_one":true,"div_is_zero":true,"degree":8}"#
        );
    }
}
