//! Special cases with closed-form answers: parity of the generator, maps
//! `z + H` with `(JH)^2 = 0`, and linear fields `z -> Mz`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::coeff::{int, rational_to_string, Coeff, Rational};
use crate::error::{JetError, Result};
use crate::generator::infer_generator_recursive;
use crate::inversion::invert_solve;
use crate::jacobian::{jacobian_det_direct, jacobian_det_exp, jacobian_matrix_direct, jacobian_matrix_exp};
use crate::matrix::{ConstantMatrix, SeriesMatrix};
use crate::operators::{exp_flow, exp_numeric, Derivation, DEFAULT_EPS, DEFAULT_KMAX};
use crate::report::Report;
use crate::series::{MapTuple, Series};

/// Tolerance of the numeric Liouville comparison.
pub const LIOUVILLE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    #[serde(rename = "F_odd")]
    pub f_odd: bool,
    pub a_odd: bool,
    pub a_even: bool,
    #[serde(rename = "G_equals_minus_F_minus")]
    pub g_equals_minus_f_minus: bool,
    pub degree: u32,
}

impl ParityReport {
    /// `F` odd iff `a` odd, and `G(z) = -F(-z)` iff `a` even.
    pub fn consistent(&self) -> bool {
        self.f_odd == self.a_odd && self.g_equals_minus_f_minus == self.a_even
    }
}

fn all_odd(m: &MapTuple) -> bool {
    m.components().iter().all(Series::is_odd)
}

fn all_even(m: &MapTuple) -> bool {
    m.components().iter().all(Series::is_even)
}

/// Computes the four parity flags independently of each other.
pub fn parity_check(f: &MapTuple) -> Result<ParityReport> {
    let a = infer_generator_recursive(f)?;
    let g = invert_solve(f)?;
    let minus_f_minus = f.reflect().negate();
    Ok(ParityReport {
        f_odd: all_odd(f),
        a_odd: all_odd(a.coeffs()),
        a_even: all_even(a.coeffs()),
        g_equals_minus_f_minus: g == minus_f_minus,
        degree: f.degree(),
    })
}

/// Outcome of [`bcw_case`].
#[derive(Clone, Debug, PartialEq)]
pub struct BcwReport {
    /// Degree of `H`; `None` for `H = 0`.
    pub homogeneous_degree: Option<u32>,
    pub nilpotent: bool,
    /// `z - H`, only when `(JH)^2 = 0`.
    pub g: Option<MapTuple>,
    /// Whether the generator of `z + H` is `H`; only when nilpotent.
    pub a_equals_h: Option<bool>,
    pub checks: Report,
}

impl BcwReport {
    pub fn passed(&self) -> bool {
        self.checks.passed()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "homogeneous_degree": self.homogeneous_degree,
            "nilpotent": self.nilpotent,
            "G": self.g.as_ref().map(MapTuple::to_json),
            "a_equals_H": self.a_equals_h,
            "checks": self.checks,
        })
    }
}

/// The common total degree of every term of `h`.
pub fn homogeneous_degree(h: &MapTuple) -> Result<Option<u32>> {
    let mut degree = None;
    for s in h.components() {
        for (e, _) in s.terms() {
            match degree {
                None => degree = Some(e.total()),
                Some(d) if d != e.total() => {
                    return Err(JetError::NotHomogeneous(format!(
                        "terms of degree {d} and {} both appear",
                        e.total()
                    )))
                }
                _ => {}
            }
        }
    }
    if let Some(d) = degree {
        if d < 2 {
            return Err(JetError::NotHomogeneous(format!("degree {d} is below 2")));
        }
    }
    Ok(degree)
}

/// For `F = z + H` with `H` homogeneous: if `(JH)^2 = 0` then the inverse is
/// `z - H` and the generator is `H` itself.
pub fn bcw_case(h: &MapTuple) -> Result<BcwReport> {
    let d = homogeneous_degree(h)?;
    let degree = h.degree();
    if let Some(d) = d {
        let need = 2 * d - 2;
        if degree < need {
            return Err(JetError::InsufficientDegree { have: degree, need });
        }
    }
    let n = h.nvars();
    let jh = jacobian_matrix_direct(h);
    let nilpotent = jh.try_mul(&jh)?.is_zero();
    let mut checks = Report::new(degree);
    checks.push("JH^2 = 0", nilpotent);
    if !nilpotent {
        return Ok(BcwReport {
            homogeneous_degree: d,
            nilpotent,
            g: None,
            a_equals_h: None,
            checks,
        });
    }

    let id = MapTuple::identity(n, degree);
    let f = id.try_add(h)?;
    let g = id.try_sub(h)?;
    let jh_h = jh.mul_vec(h.components())?;
    checks.push("JH H = 0", jh_h.iter().all(Series::is_zero));
    checks.push_mismatch("F(G) = z", f.compose(&g)?.first_difference(&id));
    checks.push_mismatch("G(F) = z", g.compose(&f)?.first_difference(&id));
    let a = infer_generator_recursive(&f)?;
    let a_equals_h = a.coeffs() == h;
    checks.push("a = H", a_equals_h);
    if let Some(d) = d {
        let mut m = 2;
        while m * (d - 1) < degree {
            let k = m * (d - 1) + 1;
            checks.push(format!("a slice {k} = 0"), a.homogeneous(k).is_zero());
            m += 1;
        }
    }
    Ok(BcwReport {
        homogeneous_degree: d,
        nilpotent,
        g: Some(g),
        a_equals_h: Some(a_equals_h),
        checks,
    })
}

/// The linear field `a(z) = Mz`, so that `Ja = M`.
///
/// Under this convention `[phi(M), phi(N)] = phi(NM - MN)`: the map reverses
/// brackets. See [`phi_embed_literal`] for the transposed reading, which
/// preserves them.
pub fn phi_embed<C: Coeff>(m: &ConstantMatrix<C>, degree: u32) -> Derivation<C> {
    let n = m.dim();
    let comps = (0..n)
        .map(|i| {
            let mut acc = Series::zero(n, degree);
            for j in 0..n {
                acc = &acc + &Series::var(n, degree, j).scale(m.get(i, j));
            }
            acc
        })
        .collect();
    Derivation::from_components(comps).expect("linear fields have no constant term")
}

/// `sum_{i,j} m_ij z_i d/dz_j`, i.e. `a(z) = M^T z`. A Lie algebra
/// homomorphism, with `Ja = M^T`.
pub fn phi_embed_literal<C: Coeff>(m: &ConstantMatrix<C>, degree: u32) -> Derivation<C> {
    phi_embed(&m.transpose(), degree)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiouvilleMode {
    ExactNilpotent,
    Numeric,
}

impl fmt::Display for LiouvilleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LiouvilleMode::ExactNilpotent => "exact-nilpotent",
            LiouvilleMode::Numeric => "numeric",
        })
    }
}

impl FromStr for LiouvilleMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" | "exact-nilpotent" => Ok(LiouvilleMode::ExactNilpotent),
            "numeric" => Ok(LiouvilleMode::Numeric),
            other => Err(format!("unknown mode {other:?}, expected exact-nilpotent or numeric")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiouvilleReport {
    pub mode: LiouvilleMode,
    /// `det e^M`, exact `p/q` or a float rendered as text.
    pub det_exp: String,
    /// `e^{tr M}` in the same format.
    pub exp_trace: String,
    /// `None` in exact mode.
    pub max_abs_error: Option<f64>,
    /// `e^M` as recovered from the flow.
    pub exp_m: Vec<Vec<String>>,
    pub checks: Report,
}

impl LiouvilleReport {
    pub fn passed(&self) -> bool {
        self.checks.passed()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "mode": self.mode.to_string(),
            "det_exp": self.det_exp,
            "exp_trace": self.exp_trace,
            "max_abs_error": match self.max_abs_error {
                Some(e) => json!(e),
                None => json!("0"),
            },
            "exp_M": self.exp_m,
            "passed": self.passed(),
        })
    }
}

/// `sum_{k<n} M^k / k!`, exact for nilpotent `M`.
pub fn nilpotent_exp(m: &ConstantMatrix) -> Result<ConstantMatrix> {
    if !m.is_nilpotent() {
        return Err(JetError::NotNilpotent);
    }
    let n = m.dim();
    let mut sum = ConstantMatrix::identity(n);
    let mut term = ConstantMatrix::identity(n);
    for k in 1..n {
        term = term.mul(m).scale(&crate::coeff::rat(1, k as i64));
        sum = sum.add(&term);
    }
    Ok(sum)
}

/// Reads off the matrix of a linear map: entry `(i, j)` is the `z_j`
/// coefficient of component `i`.
fn linear_matrix<C: Coeff>(f: &MapTuple<C>) -> ConstantMatrix<C> {
    let n = f.nvars();
    ConstantMatrix::from_fn(n, |i, j| {
        let mut e = vec![0; n];
        e[j] = 1;
        f.component(i).coeff(&e)
    })
}

/// `F = exp(phi(M)) z` for nilpotent `M`, checked against `e^M` computed as
/// a finite matrix sum. Every quantity is rational, and `det e^M = 1`.
pub fn liouville_check_exact(m: &ConstantMatrix) -> Result<LiouvilleReport> {
    let exp_m = nilpotent_exp(m)?;
    let n = m.dim();
    let degree = 3;
    let a = phi_embed(m, degree);
    let f = exp_flow(&a, &int(1))?;
    let mut checks = Report::new(degree - 1);
    checks.push("F is linear", f == f.homogeneous(1));
    checks.push("F = e^M z", linear_matrix(&f) == exp_m);
    let exp_series = SeriesMatrix::from_constant(&exp_m, n, degree);
    checks.push_mismatch("JF = e^M", jacobian_matrix_direct(&f).first_difference(&exp_series));
    let id = SeriesMatrix::identity(n, n, degree);
    checks.push_mismatch(
        "exp(A + R_Ja) Id = e^M",
        jacobian_matrix_exp(&a, &id, &int(1))?.first_difference(&exp_series),
    );
    let det = exp_m.det();
    let one = Series::one(n, degree);
    checks.push("det e^M = e^{tr M}", det == int(1) && m.trace() == int(0));
    checks.push_mismatch("det JF = 1", jacobian_det_direct(&f).first_difference(&one));
    checks.push_mismatch("exp(A + div a) 1 = 1", jacobian_det_exp(&a, &int(1))?.first_difference(&one));
    Ok(LiouvilleReport {
        mode: LiouvilleMode::ExactNilpotent,
        det_exp: rational_to_string(&det),
        exp_trace: "1".into(),
        max_abs_error: None,
        exp_m: exp_m.rows().iter().map(|r| r.iter().map(rational_to_string).collect()).collect(),
        checks,
    })
}

/// `e^M` in floating point, read off from `exp(phi(M)) z_i` summed
/// numerically.
pub fn numeric_exp_matrix(m: &ConstantMatrix<f64>) -> Result<ConstantMatrix<f64>> {
    let n = m.dim();
    let a = phi_embed(m, 1);
    let comps = (0..n)
        .map(|i| exp_numeric(&a, &Series::var(n, 1, i), 1.0, DEFAULT_EPS, DEFAULT_KMAX))
        .collect::<Result<Vec<_>>>()?;
    Ok(linear_matrix(&MapTuple::new(comps)?))
}

/// `|det e^M - e^{tr M}|` with `e^M` from the numeric flow.
pub fn liouville_check_numeric(m: &ConstantMatrix<f64>) -> Result<LiouvilleReport> {
    let exp_m = numeric_exp_matrix(m)?;
    let det = exp_m.det();
    let exp_trace = m.trace().exp();
    let err = (det - exp_trace).abs();
    let mut checks = Report::new(1);
    checks.push_detail(
        "|det e^M - e^{tr M}| <= 1e-9",
        err <= LIOUVILLE_TOL,
        format!("error {err:e}"),
    );
    Ok(LiouvilleReport {
        mode: LiouvilleMode::Numeric,
        det_exp: format!("{det}"),
        exp_trace: format!("{exp_trace}"),
        max_abs_error: Some(err),
        exp_m: exp_m.rows().iter().map(|r| r.iter().map(|x| format!("{x}")).collect()).collect(),
        checks,
    })
}

pub fn liouville_check(m: &ConstantMatrix<Rational>, mode: LiouvilleMode) -> Result<LiouvilleReport> {
    match mode {
        LiouvilleMode::ExactNilpotent => liouville_check_exact(m),
        LiouvilleMode::Numeric => liouville_check_numeric(&m.map(f64::from_rational)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    fn s(n: usize, d: u32, terms: &[(&[u32], i64)]) -> Series {
        Series::from_terms(n, d, terms.iter().map(|(e, c)| (e.to_vec(), int(*c)))).unwrap()
    }

    fn cm(rows: &[&[i64]]) -> ConstantMatrix {
        ConstantMatrix::new(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn parity_of_odd_map() {
        let f = MapTuple::new(vec![s(1, 7, &[(&[1], 1), (&[3], 1)])]).unwrap();
        let r = parity_check(&f).unwrap();
        assert!(r.f_odd && r.a_odd && !r.a_even && !r.g_equals_minus_f_minus);
        assert!(r.consistent());
    }

    #[test]
    fn parity_of_even_generator() {
        let f = MapTuple::new(vec![s(2, 6, &[(&[1, 0], 1), (&[0, 2], 1)]), Series::var(2, 6, 1)]).unwrap();
        let r = parity_check(&f).unwrap();
        assert!(r.a_even && r.g_equals_minus_f_minus && !r.f_odd && !r.a_odd);
        assert!(r.consistent());
    }

    #[test]
    fn parity_of_identity() {
        let r = parity_check(&MapTuple::identity(2, 5)).unwrap();
        assert!(r.f_odd && r.a_odd && r.a_even && r.g_equals_minus_f_minus);
    }

    #[test]
    fn parity_json_keys() {
        let r = parity_check(&MapTuple::identity(1, 3)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for k in ["F_odd", "a_odd", "a_even", "G_equals_minus_F_minus"] {
            assert!(v.get(k).is_some(), "{k}");
        }
    }

    #[test]
    fn bcw_shear() {
        let h = MapTuple::new(vec![s(2, 6, &[(&[0, 2], 1)]), Series::zero(2, 6)]).unwrap();
        let r = bcw_case(&h).unwrap();
        assert!(r.nilpotent && r.passed(), "{:?}", r.checks);
        assert_eq!(r.a_equals_h, Some(true));
        let g = MapTuple::new(vec![s(2, 6, &[(&[1, 0], 1), (&[0, 2], -1)]), Series::var(2, 6, 1)]).unwrap();
        assert_eq!(r.g, Some(g));
    }

    #[test]
    fn bcw_not_nilpotent() {
        let h = MapTuple::new(vec![s(2, 4, &[(&[0, 2], 1)]), s(2, 4, &[(&[2, 0], 1)])]).unwrap();
        let r = bcw_case(&h).unwrap();
        assert!(!r.nilpotent && r.g.is_none() && r.a_equals_h.is_none());
    }

    #[test]
    fn bcw_zero_and_errors() {
        let r = bcw_case(&MapTuple::zero(3, 4)).unwrap();
        assert!(r.nilpotent && r.passed());
        assert_eq!(r.g, Some(MapTuple::identity(3, 4)));

        let mixed = MapTuple::new(vec![s(2, 6, &[(&[0, 2], 1), (&[0, 3], 1)]), Series::zero(2, 6)]).unwrap();
        assert!(matches!(bcw_case(&mixed), Err(JetError::NotHomogeneous(_))));
        let linear = MapTuple::new(vec![s(2, 6, &[(&[0, 1], 1)]), Series::zero(2, 6)]).unwrap();
        assert!(matches!(bcw_case(&linear), Err(JetError::NotHomogeneous(_))));
        let cubic = MapTuple::new(vec![s(2, 3, &[(&[0, 3], 1)]), Series::zero(2, 3)]).unwrap();
        assert_eq!(bcw_case(&cubic).unwrap_err(), JetError::InsufficientDegree { have: 3, need: 4 });
    }

    #[test]
    fn phi_basics() {
        assert!(phi_embed(&ConstantMatrix::<Rational>::zero(2), 3).is_zero());
        let a = phi_embed(&cm(&[&[0, 1], &[0, 0]]), 3);
        assert_eq!(a.component(0), &Series::var(2, 3, 1));
        assert!(a.component(1).is_zero());
        let m = cm(&[&[1, 2], &[3, 4]]);
        assert_eq!(phi_embed(&m, 3).jacobian(), SeriesMatrix::from_constant(&m, 2, 3));
        assert_eq!(phi_embed_literal(&m, 3).jacobian(), SeriesMatrix::from_constant(&m.transpose(), 2, 3));
        assert_eq!(phi_embed(&m, 3).divergence(), Series::constant(2, 3, int(5)));
    }

    #[test]
    fn phi_reverses_brackets() {
        let m = cm(&[&[1, 2], &[0, -1]]);
        let n = cm(&[&[0, 1], &[3, 2]]);
        let lhs = phi_embed(&m, 3).bracket(&phi_embed(&n, 3)).unwrap();
        assert_eq!(lhs, phi_embed(&n.commutator(&m), 3));
        assert_ne!(lhs, phi_embed(&m.commutator(&n), 3));
        let lit = phi_embed_literal(&m, 3).bracket(&phi_embed_literal(&n, 3)).unwrap();
        assert_eq!(lit, phi_embed_literal(&m.commutator(&n), 3));
    }

    #[test]
    fn liouville_exact_example() {
        let r = liouville_check_exact(&cm(&[&[0, 1], &[0, 0]])).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
        assert_eq!(r.exp_m, vec![vec!["1", "1"], vec!["0", "1"]]);
        assert_eq!(r.det_exp, "1");
        let v = r.to_json();
        assert_eq!(v["max_abs_error"], json!("0"));
        assert_eq!(v["mode"], json!("exact-nilpotent"));

        let r = liouville_check_exact(&ConstantMatrix::zero(3)).unwrap();
        assert!(r.passed());
        assert!(matches!(liouville_check_exact(&cm(&[&[1, 0], &[0, 0]])), Err(JetError::NotNilpotent)));
    }

    #[test]
    fn liouville_exact_three_by_three() {
        let m = ConstantMatrix::new(vec![
            vec![int(0), rat(1, 2), int(-3)],
            vec![int(0), int(0), int(2)],
            vec![int(0), int(0), int(0)],
        ])
        .unwrap();
        let r = liouville_check_exact(&m).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
        assert_eq!(r.exp_m[0][2], "-5/2");
    }

    #[test]
    fn liouville_numeric() {
        let m = ConstantMatrix::new(vec![vec![0.5, -0.25], vec![0.75, 0.1]]).unwrap();
        let r = liouville_check_numeric(&m).unwrap();
        assert!(r.passed());
        assert!(r.max_abs_error.unwrap() <= LIOUVILLE_TOL);
        // exp(x d/dx) x = e x
        let e = numeric_exp_matrix(&ConstantMatrix::new(vec![vec![1.0]]).unwrap()).unwrap();
        assert!((e.get(0, 0) - std::f64::consts::E).abs() <= 1e-9);
    }
}
