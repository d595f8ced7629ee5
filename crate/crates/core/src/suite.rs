//! The full identity suite on one map, and the seeded random sweep.

use rayon::prelude::*;
use serde::Serialize;

use crate::coeff::{int, TPoly};
use crate::deformation::{check_field_transport, check_flow_ode, check_jacobian_ode, deform};
use crate::error::Result;
use crate::generator::{infer_generator_log, infer_generator_recursive, verify_generator};
use crate::inversion::{invert_exp, invert_iterates, invert_solve};
use crate::jacobian::{
    jacobian_det_direct, jacobian_det_exp, jacobian_matrix_direct, jacobian_matrix_exp, keller_check,
};
use crate::matrix::SeriesMatrix;
use crate::random::Sampler;
use crate::report::{Check, Report};
use crate::series::{MapTuple, Series};
use crate::structure::{bcw_case, liouville_check_exact, liouville_check_numeric, parity_check};

/// Runs every identity that applies to a map tangent to the identity.
///
/// Checks built from first derivatives of `F` or `a` hold modulo `D - 1`;
/// the rest modulo `D`. The report is labelled with the weaker bound.
pub fn verify_map(f: &MapTuple) -> Result<Report> {
    f.check_f1()?;
    let n = f.nvars();
    let d = f.degree();
    let d1 = d.saturating_sub(1);
    let mut r = Report::new(d);

    let a = infer_generator_recursive(f)?;
    r.push_mismatch("generator: recursive = log", a.coeffs().first_difference(infer_generator_log(f)?.coeffs()));
    r.extend("generator: exp(A) z = ", verify_generator(f, &a));

    let g = invert_solve(f)?;
    let id = MapTuple::identity(n, d);
    r.push_mismatch("inverse: exp(-A) z = solve", invert_exp(f)?.first_difference(&g));
    r.push_mismatch("inverse: iterates = solve", invert_iterates(f)?.first_difference(&g));
    r.push_mismatch("inverse: F(G) = z", f.compose(&g)?.first_difference(&id));
    r.push_mismatch("inverse: G(F) = z", g.compose(f)?.first_difference(&id));
    r.push_mismatch("inverse: G^-1 = F", invert_solve(&g)?.first_difference(f));
    r.push_mismatch(
        "inverse: generator of G = -a",
        infer_generator_recursive(&g)?.coeffs().first_difference(a.negate().coeffs()),
    );

    let mut r1 = Report::new(d1);
    let det = jacobian_det_direct(f);
    let det_exp = jacobian_det_exp(&a, &int(1))?;
    r1.push_mismatch("jacobian: exp(A + div a) 1 = det JF", det_exp.first_difference(&det));
    let jm = jacobian_matrix_exp(&a, &SeriesMatrix::identity(n, n, d), &int(1))?;
    r1.push_mismatch("jacobian: exp(A + R_Ja) Id = JF", jm.first_difference(&jacobian_matrix_direct(f)));
    r1.push_mismatch("jacobian: det exp(A + R_Ja) Id = exp(A + div a) 1", jm.det().first_difference(&det_exp));
    let k = keller_check(f)?;
    r1.push("keller: det JF = 1 iff div a = 0", k.consistent());

    let ft = deform(&a)?;
    r.push_mismatch("deform: F_1 = F", ft.specialize(&int(1)).first_difference(f));
    r.push_mismatch("deform: F_0 = z", ft.specialize(&int(0)).first_difference(&id));
    r.push_mismatch("deform: F_2 = F(F)", ft.specialize(&int(2)).first_difference(&f.compose(f)?));
    r.push_mismatch("deform: F_-1 = G", ft.specialize(&int(-1)).first_difference(&g));
    let at = a.lift::<TPoly>();
    let t = TPoly::t();
    r1.push_mismatch(
        "jacobian: exp(t(A + div a)) 1 = det JF_t",
        jacobian_det_exp(&at, &t)?.first_difference(&jacobian_det_direct(ft.map())),
    );
    r.extend("flow: ", check_flow_ode(&a, &Series::var(n, d, 0))?);
    r.extend("flow: ", check_field_transport(&a)?);
    r1.extend("flow: ", check_jacobian_ode(&a)?);

    let p = parity_check(f)?;
    r.push("parity: F odd iff a odd; G = -F(-z) iff a even", p.consistent());

    r.degree = d1;
    r.extend("", r1);
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub case: u64,
    pub nvars: usize,
    pub keller: bool,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    /// Certified degree; cases are built one degree higher.
    pub degree: u32,
    pub cases: Vec<CaseResult>,
    pub passed: bool,
}

impl SelftestReport {
    pub fn failed(&self) -> usize {
        self.cases.iter().filter(|c| !c.passed).count()
    }
}

fn fail(name: &str, e: impl ToString) -> Check {
    Check {
        name: name.into(),
        passed: false,
        detail: Some(e.to_string()),
    }
}

/// One sweep case: a random map (Keller maps on even cases) through
/// [`verify_map`], plus one structural check rotating through BCW, exact
/// Liouville and numeric Liouville.
pub fn run_case(seed: u64, index: u64, n: Option<usize>, degree: u32) -> CaseResult {
    let mut s = Sampler::for_case(seed, index);
    let nvars = n.unwrap_or(1 + (index % 3) as usize);
    let keller = index.is_multiple_of(2);
    let work = degree + 1;
    let f = if keller {
        let a = s.divergence_free_derivation(nvars, 3, work);
        crate::operators::exp_flow(&a, &int(1)).expect("graded field")
    } else {
        s.non_keller_map(nvars, 3, work)
    };
    let mut checks = match verify_map(&f) {
        Ok(r) => r.checks,
        Err(e) => vec![fail("verify", e)],
    };
    let one = Series::one(nvars, work);
    let unit = jacobian_det_direct(&f).eq_mod(&one, degree);
    checks.push(Check {
        name: if keller { "keller map: det JF = 1" } else { "generic map: det JF != 1" }.into(),
        passed: unit == keller,
        detail: None,
    });
    let structural = match index % 3 {
        0 if nvars >= 2 => {
            let d = s.range(2, 3);
            bcw_case(&s.bcw_first_row(nvars, d, work)).map(|r| r.checks)
        }
        1 => liouville_check_exact(&s.nilpotent_matrix(nvars.max(2))).map(|r| r.checks),
        _ => liouville_check_numeric(&s.float_matrix(3)).map(|r| r.checks),
    };
    match structural {
        Ok(r) => checks.extend(r.checks.into_iter().map(|mut c| {
            c.name = format!("structure: {}", c.name);
            c
        })),
        Err(e) => checks.push(fail("structure", e)),
    }
    let failures: Vec<Check> = checks.iter().filter(|c| !c.passed).cloned().collect();
    CaseResult {
        case: index,
        nvars,
        keller,
        passed: failures.is_empty(),
        checks: checks.len(),
        failures,
    }
}

/// Runs `cases` seeded cases in parallel. Results are collected in case
/// order, so the report does not depend on scheduling. When `n` is `None`
/// the variable count cycles through 1, 2, 3.
pub fn selftest(seed: u64, n: Option<usize>, degree: u32, cases: u64) -> SelftestReport {
    let results: Vec<CaseResult> = (0..cases)
        .into_par_iter()
        .map(|i| run_case(seed, i, n, degree))
        .collect();
    let passed = results.iter().all(|c| c.passed);
    SelftestReport {
        seed,
        degree,
        cases: results,
        passed,
    }
}
