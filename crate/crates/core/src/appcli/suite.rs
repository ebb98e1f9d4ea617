//! Regression checks against known reference values.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactalg::{int, rat, GradedPolynomial, VarSet};
use crate::indexengine::{
    glmh_specialization, index_formula, salamon_character_identity, specialize_to_chern,
    todd_top_in_chern, IndexFormula,
};
use crate::symred::{presentation_vars, GeneratorBasis, InvariantExpression};

use super::{evaluate_formula, hp_characteristic_data, integrality_lattice, render::render_text};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

type Term<'a> = (&'a [(&'a str, u32)], i64, i64);

pub const DIM8_D0: &[Term] = &[
    (&[("p1", 2)], 7, 1920),
    (&[("p1", 1), ("q1", 1)], -1, 24),
    (&[("p2", 1)], -1, 480),
    (&[("q1", 2)], 1, 12),
];

pub const DIM8_D1: &[Term] = &[
    (&[("p1", 2)], 209, 1920),
    (&[("p1", 1), ("q1", 1)], 11, 24),
    (&[("p2", 1)], -167, 480),
    (&[("q1", 2)], 25, 12),
];

pub const DIM12_D0: &[Term] = &[
    (&[("p1", 3)], 31, 241920),
    (&[("p1", 2), ("q1", 1)], -7, 2304),
    (&[("p1", 1), ("p2", 1)], -11, 60480),
    (&[("p1", 1), ("q1", 2)], 41, 2304),
    (&[("p2", 1), ("q1", 1)], 1, 576),
    (&[("p3", 1)], 1, 15120),
    (&[("q1", 3)], -73, 2304),
];

pub const DIM12_D1: &[Term] = &[
    (&[("p1", 3)], -1, 6720),
    (&[("p1", 2), ("q1", 1)], -77, 576),
    (&[("p1", 1), ("p2", 1)], 1, 280),
    (&[("p1", 1), ("q1", 2)], -35, 576),
    (&[("p2", 1), ("q1", 1)], 7, 18),
    (&[("p3", 1)], -17, 840),
    (&[("q1", 3)], -623, 576),
];

/// Residual of `11 ind D_0 + ind D_1` in dimension 8.
pub const DIM8_COMBO_11_1: &[Term] = &[
    (&[("p1", 2)], 143, 960),
    (&[("p2", 1)], -89, 240),
    (&[("q1", 2)], 3, 1),
];

/// Residual of `50 ind D_0 - 2 ind D_1` in dimension 8.
pub const DIM8_COMBO_50_M2: &[Term] = &[
    (&[("p1", 2)], -17, 480),
    (&[("p1", 1), ("q1", 1)], -3, 1),
    (&[("p2", 1)], 71, 120),
];

/// `1/80 c2^2 - 1/240 c4`.
pub const GLMH_DIM8: &[Term] = &[(&[("c2", 2)], 1, 80), (&[("c4", 1)], -1, 240)];

fn expression(vars: &Arc<VarSet>, terms: &[Term]) -> InvariantExpression {
    let mut p = GradedPolynomial::zero(vars);
    for (exps, n, d) in terms {
        p = &p + &GradedPolynomial::monomial(vars, exps, rat(*n, *d)).expect("known generators");
    }
    InvariantExpression::new(p)
}

pub fn expected_formula(m: usize, terms: &[Term]) -> InvariantExpression {
    expression(&presentation_vars(m), terms)
}

fn outcome(name: &str, passed: bool, detail: String) -> CheckOutcome {
    CheckOutcome {
        name: name.to_string(),
        passed,
        detail,
    }
}

fn formula_check(name: &str, f: &Result<IndexFormula>, m: usize, terms: &[Term]) -> CheckOutcome {
    match f {
        Ok(f) => {
            let want = expected_formula(m, terms);
            outcome(name, f.expr == want, render_text(&f.expr))
        }
        Err(e) => outcome(name, false, e.to_string()),
    }
}

fn value_check(
    name: &str,
    formulas: &[&Result<IndexFormula>],
    m: usize,
    want: &[i64],
) -> CheckOutcome {
    let data = hp_characteristic_data(m);
    let mut got = Vec::new();
    for f in formulas {
        match f
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|f| evaluate_formula(f, &data))
        {
            Ok(v) => got.push(v),
            Err(e) => return outcome(name, false, e.to_string()),
        }
    }
    let passed = got.iter().zip(want).all(|(g, w)| *g == int(*w));
    let detail = got
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ");
    outcome(name, passed, detail)
}

fn glmh_checks() -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let dim8 = (|| -> Result<(bool, String)> {
        let g = glmh_specialization(2)?;
        let want = expression(GeneratorBasis::even_chern(2).generator_vars(), GLMH_DIM8);
        let td = todd_top_in_chern(2)?;
        let triple = g.poly() == &td.poly().scale(&int(3));
        Ok((g == want && triple, render_text(&g)))
    })();
    out.push(match dim8 {
        Ok((p, d)) => outcome("GL(2,H) specialization", p, d),
        Err(e) => outcome("GL(2,H) specialization", false, e.to_string()),
    });
    for m in 2..=3usize {
        let name = format!("GL({m},H) equals (-1)^m (m+1) td_top(F)");
        let r = (|| -> Result<(bool, String)> {
            let g = glmh_specialization(m)?;
            let sign = if m % 2 == 0 { 1 } else { -1 };
            let td = todd_top_in_chern(m)?
                .poly()
                .scale(&int(sign * (m as i64 + 1)));
            let via_p = specialize_to_chern(&index_formula(m, 0)?)?;
            Ok((g.poly() == &td && via_p == g, render_text(&g)))
        })();
        out.push(match r {
            Ok((p, d)) => outcome(&name, p, d),
            Err(e) => outcome(&name, false, e.to_string()),
        });
    }
    out
}

fn integrality_check(d0: &Result<IndexFormula>, d1: &Result<IndexFormula>) -> CheckOutcome {
    let name = "dim-8 integrality combinations";
    let r = (|| -> Result<(bool, String)> {
        let fs = [d0.clone()?, d1.clone()?];
        let lattice = integrality_lattice(&fs)?;
        let mut ok = true;
        let mut detail = Vec::new();
        for (a, b, terms) in [(11, 1, DIM8_COMBO_11_1), (50, -2, DIM8_COMBO_50_M2)] {
            let combo = [BigInt::from(a), BigInt::from(b)];
            let c = lattice.combination(&combo)?;
            ok &= c.residual == expected_formula(2, terms) && lattice.contains(&combo);
            detail.push(c.to_string());
        }
        Ok((ok, detail.join("; ")))
    })();
    match r {
        Ok((p, d)) => outcome(name, p, d),
        Err(e) => outcome(name, false, e.to_string()),
    }
}

/// Every reference check, in a fixed order.
pub fn reference_checks() -> Vec<CheckOutcome> {
    let d80 = index_formula(2, 0);
    let d81 = index_formula(2, 1);
    let d120 = index_formula(3, 0);
    let d121 = index_formula(3, 1);
    let mut out = vec![
        formula_check("dim-8 D0 formula", &d80, 2, DIM8_D0),
        formula_check("dim-8 D1 formula", &d81, 2, DIM8_D1),
        formula_check("dim-12 D0 formula", &d120, 3, DIM12_D0),
        formula_check("dim-12 D1 formula", &d121, 3, DIM12_D1),
        value_check("HP2 indices D0 = 1, D1 = 35", &[&d80, &d81], 2, &[1, 35]),
        value_check(
            "HP3 indices D0 = -1, D1 = -63",
            &[&d120, &d121],
            3,
            &[-1, -63],
        ),
    ];
    out.extend(glmh_checks());
    out.push(integrality_check(&d80, &d81));
    for m in 1..=3usize {
        let cap = 8 * m as u32;
        out.push(outcome(
            &format!("Lambda_t character identity, m = {m}"),
            salamon_character_identity(m, cap),
            format!("cap {cap}"),
        ));
    }
    out
}

pub fn run_suite(name: &str) -> Result<Vec<CheckOutcome>> {
    match name {
        "paper" => Ok(reference_checks()),
        other => Err(Error::InvalidInput(format!(
            "unknown check suite `{other}`"
        ))),
    }
}
