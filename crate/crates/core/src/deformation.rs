//! The flow `F_t = exp(tA) z` with a symbolic time parameter, and the
//! identities it satisfies.

use serde_json::{json, Value};

use crate::coeff::{int, Rational, TPoly};
use crate::error::Result;
use crate::jacobian::{jacobian_det_direct, jacobian_matrix_direct};
use crate::operators::{exp_apply, exp_flow, Derivation, Exactness};
use crate::report::Report;
use crate::series::{MapTuple, Series};

/// `F_t` over `Q[t]`, together with the field it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformedMap {
    map: MapTuple<TPoly>,
    source: Derivation,
}

/// Builds `F_t = exp(tA) z` with `t` symbolic.
pub fn deform(a: &Derivation) -> Result<DeformedMap> {
    let map = exp_flow(&a.lift::<TPoly>(), &TPoly::t())?;
    if a.exactness()? == Exactness::Graded {
        // each application of A raises the z-degree by at least one
        debug_assert!(map.components().iter().all(|s| s
            .terms()
            .all(|(e, c)| c.degree().is_none_or(|k| k < e.total().max(1) as usize))));
    }
    Ok(DeformedMap {
        map,
        source: a.clone(),
    })
}

impl DeformedMap {
    pub fn map(&self) -> &MapTuple<TPoly> {
        &self.map
    }

    pub fn source(&self) -> &Derivation {
        &self.source
    }

    pub fn nvars(&self) -> usize {
        self.map.nvars()
    }

    pub fn degree(&self) -> u32 {
        self.map.degree()
    }

    /// `F(z; t0)`.
    pub fn specialize(&self, t0: &Rational) -> MapTuple {
        self.map.map_coeffs(|p| p.eval(t0))
    }

    /// Highest power of `t` appearing anywhere.
    pub fn t_degree(&self) -> usize {
        self.map
            .components()
            .iter()
            .flat_map(|s| s.terms().filter_map(|(_, c)| c.degree()))
            .max()
            .unwrap_or(0)
    }

    /// The tuple JSON form, each coefficient an array of `"p/q"` strings
    /// listing the coefficients of `1, t, t^2, ...`.
    pub fn to_json(&self) -> Value {
        self.map.to_json()
    }

    pub fn to_text(&self) -> String {
        self.map.to_text()
    }

    /// JSON for both the map and the field.
    pub fn to_json_with_source(&self) -> Value {
        json!({ "Ft": self.to_json(), "a": self.source.coeffs().to_json() })
    }
}

/// `t -> t0` in every coefficient of a series.
pub fn specialize_series(s: &Series<TPoly>, t0: &Rational) -> Series {
    s.map_coeffs(|p| p.eval(t0))
}

/// `d/dt` applied coefficientwise.
pub fn t_derivative(s: &Series<TPoly>) -> Series<TPoly> {
    s.map_coeffs(TPoly::derivative)
}

/// Checks that `g = exp(tA) u` solves `dg/dt = A g`, equals `u(F_t)` and
/// starts at `u`.
pub fn check_flow_ode(a: &Derivation, u: &Series) -> Result<Report> {
    let at = a.lift::<TPoly>();
    let ut = u.lift::<TPoly>();
    let g = exp_apply(&at, &ut, &TPoly::t())?;
    let ft = exp_flow(&at, &TPoly::t())?;
    let mut report = Report::new(a.degree());
    report.push_mismatch("dg/dt = A g", t_derivative(&g).first_difference(&at.apply(&g)?));
    report.push_mismatch("g = u(F_t)", g.first_difference(&ut.compose(&ft)?));
    report.push_mismatch("g(0) = u", specialize_series(&g, &int(0)).first_difference(u));
    Ok(report)
}

/// Checks `JF_t a(z) = a(F_t)`, that is, the flow carries the field to
/// itself.
///
/// `JF_t` is only known modulo `D - 1`, but every `a_i` has order at least
/// one, so the product is still exact modulo `D`.
pub fn check_field_transport(a: &Derivation) -> Result<Report> {
    let at = a.lift::<TPoly>();
    let ft = exp_flow(&at, &TPoly::t())?;
    let lhs = jacobian_matrix_direct(&ft).mul_vec(at.coeffs().components())?;
    let rhs = at.coeffs().compose(&ft)?;
    let mut report = Report::new(a.degree());
    for (i, (l, r)) in lhs.iter().zip(rhs.components()).enumerate() {
        report.push_mismatch(format!("(JF_t a)_{} = a_{}(F_t)", i + 1, i + 1), l.first_difference(r));
    }
    Ok(report)
}

/// Checks the evolution of `J = J(F_t)` computed as a determinant:
/// `dJ/dt = (A + div a) J = (div a)(F_t) J`, the difference form
/// `A J = ((div a)(F_t) - div a) J`, and `dJ/dt |_{t=0} = div a`.
/// Certified modulo `D - 1`.
pub fn check_jacobian_ode(a: &Derivation) -> Result<Report> {
    let at = a.lift::<TPoly>();
    let ft = exp_flow(&at, &TPoly::t())?;
    let jac = jacobian_det_direct(&ft);
    let djac = t_derivative(&jac);
    let div = at.divergence();
    let div_ft = div.compose(&ft)?;

    let a_jac = at.apply(&jac)?;
    let rhs1 = a_jac.try_add(&div.try_mul(&jac)?)?;
    let rhs2 = div_ft.try_mul(&jac)?;
    let rhs3 = div_ft.try_sub(&div)?.try_mul(&jac)?;

    let mut report = Report::new(a.degree().saturating_sub(1));
    report.push_mismatch("dJ/dt = (A + div a) J", djac.first_difference(&rhs1));
    report.push_mismatch("dJ/dt = (div a)(F_t) J", djac.first_difference(&rhs2));
    report.push_mismatch("A J = ((div a)(F_t) - div a) J", a_jac.first_difference(&rhs3));
    report.push_mismatch(
        "dJ/dt at t = 0 equals div a",
        specialize_series(&djac, &int(0)).first_difference(&a.divergence()),
    );
    let cert = report.degree;
    let jac_is_one = jac.eq_mod(&Series::one(a.nvars(), a.degree()), cert);
    let div_is_zero = a.divergence().eq_mod(&Series::zero(a.nvars(), a.degree()), cert);
    report.push("J(F_t) = 1 iff div a = 0", jac_is_one == div_is_zero);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    fn tp(c: &[i64]) -> TPoly {
        TPoly::new(c.iter().map(|&k| int(k)).collect())
    }

    fn x_squared(degree: u32) -> Derivation {
        Derivation::from_components(vec![Series::monomial(1, degree, vec![2], int(1)).unwrap()])
            .unwrap()
    }

    fn shear_field(degree: u32) -> Derivation {
        Derivation::from_components(vec![
            Series::monomial(2, degree, vec![0, 2], int(1)).unwrap(),
            Series::zero(2, degree),
        ])
        .unwrap()
    }

    #[test]
    fn deform_zero_is_identity() {
        let d = deform(&Derivation::zero(2, 4)).unwrap();
        assert_eq!(d.map(), &MapTuple::identity(2, 4));
        assert_eq!(d.t_degree(), 0);
    }

    #[test]
    fn deform_shear() {
        let d = deform(&shear_field(5)).unwrap();
        let expected = Series::from_terms(2, 5, [(vec![1, 0], tp(&[1])), (vec![0, 2], tp(&[0, 1]))]).unwrap();
        assert_eq!(d.map().component(0), &expected);
        assert_eq!(d.map().component(1), &Series::var(2, 5, 1));
    }

    #[test]
    fn deform_one_variable_closed_form() {
        let d = deform(&x_squared(3)).unwrap();
        let expected = Series::from_terms(
            1,
            3,
            [(vec![1], tp(&[1])), (vec![2], tp(&[0, 1])), (vec![3], tp(&[0, 0, 1]))],
        )
        .unwrap();
        assert_eq!(d.map().component(0), &expected);
        assert_eq!(d.map().to_text(), "F1 = z1 + t*z1^2 + t^2*z1^3");

        let dt = t_derivative(&expected);
        let want = Series::from_terms(1, 3, [(vec![2], tp(&[1])), (vec![3], tp(&[0, 2]))]).unwrap();
        assert_eq!(dt, want);
    }

    #[test]
    fn t_derivative_of_constants() {
        let s = Series::<TPoly>::var(2, 3, 0);
        assert!(t_derivative(&s).is_zero());
        let t2 = Series::constant(1, 3, tp(&[0, 0, 1]));
        assert_eq!(t_derivative(&t2), Series::constant(1, 3, tp(&[0, 2])));
    }

    #[test]
    fn specializations() {
        let a = x_squared(4);
        let d = deform(&a).unwrap();
        assert_eq!(d.specialize(&int(0)), MapTuple::identity(1, 4));
        let f1 = d.specialize(&int(1));
        assert_eq!(f1, exp_flow(&a, &int(1)).unwrap());
        assert_eq!(d.specialize(&int(2)), f1.compose(&f1).unwrap());
        // x / (1 - x/2)
        let half = d.specialize(&rat(1, 2));
        assert_eq!(half.component(0).coeff(&[4]), rat(1, 8));
    }

    #[test]
    fn flow_identities_on_examples() {
        for a in [shear_field(6), Derivation::zero(2, 6)] {
            assert!(check_flow_ode(&a, &Series::var(2, 6, 0)).unwrap().passed());
            assert!(check_flow_ode(&a, &Series::one(2, 6)).unwrap().passed());
            assert!(check_field_transport(&a).unwrap().passed());
            assert!(check_jacobian_ode(&a).unwrap().passed());
        }
        let a = x_squared(6);
        assert!(check_flow_ode(&a, &Series::var(1, 6, 0)).unwrap().passed());
        assert!(check_field_transport(&a).unwrap().passed());
        let r = check_jacobian_ode(&a).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.degree, 5);
    }

    #[test]
    fn json_coefficients_are_arrays() {
        let d = deform(&shear_field(2)).unwrap();
        let v = d.to_json();
        let c = &v[0]["terms"];
        assert!(c.as_array().unwrap().iter().any(|t| t["coeff"] == serde_json::json!(["0", "1"])));
    }
}
