//! Text, LaTeX and JSON output for index formulas, and JSON input for
//! formulas and characteristic numbers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{fmt_rational, GradedPolynomial, Monomial, Rational, VarSet};
use crate::indexengine::IndexFormula;
use crate::symred::{presentation_vars, InvariantExpression};

use super::{IntegralityCondition, IntegralityLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Latex,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "latex" => Ok(OutputFormat::Latex),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Text => "text",
            OutputFormat::Latex => "latex",
            OutputFormat::Json => "json",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalJson {
    fn from(q: &Rational) -> Self {
        RationalJson {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

impl TryFrom<&RationalJson> for Rational {
    type Error = Error;

    fn try_from(r: &RationalJson) -> Result<Rational> {
        let parse = |s: &str| {
            s.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("`{s}` is not an integer")))
        };
        let den = parse(&r.den)?;
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Rational::new(parse(&r.num)?, den))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: BTreeMap<String, u32>,
    pub coeff: RationalJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaJson {
    pub dim: usize,
    pub k: usize,
    pub generators: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassesJson {
    pub name: String,
    pub dim: usize,
    pub generators: Vec<String>,
    pub terms: Vec<TermJson>,
}

fn latex_var(name: &str) -> String {
    let split = name
        .find(|c: char| c.is_ascii_digit())
        .unwrap_or(name.len());
    let (base, idx) = name.split_at(split);
    if idx.is_empty() {
        base.to_string()
    } else {
        format!("{base}_{{{idx}}}")
    }
}

fn latex_monomial(named: &[(String, u32)]) -> String {
    named
        .iter()
        .map(|(v, e)| {
            if *e == 1 {
                latex_var(v)
            } else {
                format!("{}^{{{e}}}", latex_var(v))
            }
        })
        .collect()
}

fn latex_coeff(abs: &Rational, has_monomial: bool) -> String {
    if abs.is_one() && has_monomial {
        String::new()
    } else if abs.denom().is_one() {
        abs.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
    }
}

fn text_monomial(named: &[(String, u32)]) -> String {
    named
        .iter()
        .map(|(v, e)| {
            if *e == 1 {
                v.clone()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn text_term(abs: &Rational, named: &[(String, u32)]) -> String {
    match (named.is_empty(), abs.is_one()) {
        (true, _) => fmt_rational(abs),
        (false, true) => text_monomial(named),
        (false, false) => format!("{}*{}", fmt_rational(abs), text_monomial(named)),
    }
}

/// Signed sum of terms in presentation order.
fn join_terms(
    expr: &InvariantExpression,
    term: impl Fn(&Rational, &[(String, u32)]) -> String,
) -> String {
    let terms = expr.ordered_terms();
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (named, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&term(&c.abs(), named));
    }
    out
}

pub fn render_text(expr: &InvariantExpression) -> String {
    join_terms(expr, text_term)
}

pub fn render_latex(expr: &InvariantExpression) -> String {
    join_terms(expr, |abs, named| {
        format!(
            "{}{}",
            latex_coeff(abs, !named.is_empty()),
            latex_monomial(named)
        )
    })
}

fn terms_json(expr: &InvariantExpression) -> Vec<TermJson> {
    expr.ordered_terms()
        .into_iter()
        .map(|(named, c)| TermJson {
            exps: named.into_iter().collect(),
            coeff: RationalJson::from(&c),
        })
        .collect()
}

pub fn formula_to_json(f: &IndexFormula) -> FormulaJson {
    FormulaJson {
        dim: f.dim(),
        k: f.k,
        generators: presentation_vars(f.m).names().to_vec(),
        terms: terms_json(&f.expr),
    }
}

pub fn render_formula(f: &IndexFormula, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => render_text(&f.expr),
        OutputFormat::Latex => render_latex(&f.expr),
        OutputFormat::Json => {
            serde_json::to_string_pretty(&formula_to_json(f)).expect("plain data serializes")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionJson {
    pub ks: Vec<usize>,
    pub combo: Vec<String>,
    pub residual: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub dim: usize,
    pub generators: Vec<String>,
    pub hnf: Vec<ConditionJson>,
    pub reduced: Vec<ConditionJson>,
}

fn condition_json(c: &IntegralityCondition) -> ConditionJson {
    ConditionJson {
        ks: c.ks.clone(),
        combo: c.combo.iter().map(ToString::to_string).collect(),
        residual: terms_json(&c.residual),
    }
}

/// Integrality conditions, HNF rows first and then the reduced basis.
pub fn render_lattice(l: &IntegralityLattice, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let j = LatticeJson {
                dim: 4 * l.m,
                generators: presentation_vars(l.m).names().to_vec(),
                hnf: l.hnf.iter().map(condition_json).collect(),
                reduced: l.reduced.iter().map(condition_json).collect(),
            };
            serde_json::to_string_pretty(&j).expect("plain data serializes")
        }
        OutputFormat::Text | OutputFormat::Latex => {
            let line = |c: &IntegralityCondition| {
                let body = if format == OutputFormat::Text {
                    render_text(&c.residual)
                } else {
                    render_latex(&c.residual)
                };
                format!("{} = {}", c.combination_label(), body)
            };
            let mut out = vec!["# Hermite normal form".to_string()];
            out.extend(l.hnf.iter().map(line));
            out.push("# LLL-reduced".to_string());
            out.extend(l.reduced.iter().map(line));
            out.join("\n")
        }
    }
}

/// `m` for a dimension `4m`, with the generator list checked against
/// `p1..pm, q1`.
fn check_header(dim: usize, generators: &[String]) -> Result<usize> {
    if dim == 0 || !dim.is_multiple_of(4) {
        return Err(Error::InvalidInput(format!(
            "dimension {dim} is not a positive multiple of 4"
        )));
    }
    let m = dim / 4;
    let expected = presentation_vars(m);
    if generators != expected.names() {
        return Err(Error::InvalidInput(format!(
            "generators must be [{}] for dimension {dim}",
            expected.names().join(", ")
        )));
    }
    Ok(m)
}

/// Reads the term list into a map from monomials to coefficients. Unknown
/// generators and repeated monomials are errors.
pub fn terms_from_json(
    vars: &std::sync::Arc<VarSet>,
    terms: &[TermJson],
) -> Result<BTreeMap<Monomial, Rational>> {
    let mut out = BTreeMap::new();
    for t in terms {
        let mut e = vec![0u32; vars.len()];
        for (name, &exp) in &t.exps {
            let i = vars
                .index_of(name)
                .ok_or_else(|| Error::InvalidInput(format!("unknown generator `{name}`")))?;
            e[i] = exp;
        }
        let mono = Monomial::from_exponents(&e);
        let c = Rational::try_from(&t.coeff)?;
        if out.insert(mono.clone(), c).is_some() {
            return Err(Error::InvalidInput(format!(
                "monomial {} listed twice",
                mono.display(vars)
            )));
        }
    }
    Ok(out)
}

pub fn formula_from_json(j: &FormulaJson) -> Result<IndexFormula> {
    let m = check_header(j.dim, &j.generators)?;
    let vars = presentation_vars(m);
    let terms = terms_from_json(&vars, &j.terms)?;
    let poly = GradedPolynomial::from_terms(&vars, terms);
    IndexFormula::new(m, j.k, InvariantExpression::new(poly))
}

pub fn parse_formula(s: &str) -> Result<IndexFormula> {
    let j: FormulaJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    formula_from_json(&j)
}

pub(crate) fn classes_header(j: &ClassesJson) -> Result<usize> {
    check_header(j.dim, &j.generators)
}
