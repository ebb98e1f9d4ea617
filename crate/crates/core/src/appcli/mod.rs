//! Applications of the index formulas: characteristic numbers of model
//! manifolds, evaluation, integrality conditions, and rendering.

pub mod lattice;
pub mod render;
pub mod suite;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{GradedPolynomial, Monomial, Rational, VarSet};
use crate::indexengine::IndexFormula;
use crate::symred::{presentation_vars, InvariantExpression};

use lattice::{congruence_lattice, hermite_normal_form, hnf_contains, lll_reduce, IntRow};
use render::{classes_header, terms_from_json, ClassesJson};

/// All exponent vectors over `vars` of total degree `degree`, in descending
/// lexicographic order.
pub fn monomials_of_degree(vars: &VarSet, degree: u32) -> Vec<Monomial> {
    fn go(vars: &VarSet, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == vars.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(cur));
            }
            return;
        }
        let d = vars.degree(i);
        for e in (0..=left / d).rev() {
            cur[i] = e;
            go(vars, i + 1, left - e * d, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(vars, 0, degree, &mut vec![0; vars.len()], &mut out);
    out
}

/// Characteristic numbers of a `4m`-manifold for every degree-`4m` monomial
/// in `p_1..p_m, q1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ManifoldCharData {
    pub name: String,
    pub m: usize,
    values: BTreeMap<Monomial, Rational>,
}

impl ManifoldCharData {
    pub fn new(
        name: impl Into<String>,
        m: usize,
        values: BTreeMap<Monomial, Rational>,
    ) -> Result<Self> {
        let vars = presentation_vars(m);
        let top = 4 * m as u32;
        for mono in values.keys() {
            if mono.exponents().len() != vars.len() || mono.degree(&vars) != top {
                return Err(Error::InvalidInput(format!(
                    "monomial {} is not of degree {top}",
                    mono.display(&vars)
                )));
            }
        }
        for mono in monomials_of_degree(&vars, top) {
            if !values.contains_key(&mono) {
                return Err(Error::MissingValue(mono.display(&vars)));
            }
        }
        Ok(ManifoldCharData {
            name: name.into(),
            m,
            values,
        })
    }

    pub fn value(&self, mono: &Monomial) -> Option<&Rational> {
        self.values.get(mono)
    }

    pub fn value_of(&self, exps: &[(&str, u32)]) -> Option<&Rational> {
        let vars = presentation_vars(self.m);
        let mut e = vec![0; vars.len()];
        for (name, x) in exps {
            e[vars.index_of(name)?] = *x;
        }
        self.values.get(&Monomial::from_exponents(&e))
    }

    pub fn values(&self) -> &BTreeMap<Monomial, Rational> {
        &self.values
    }
}

/// `HP^m`: `p = (1+u)^{2m+2} (1+4u)^{-1}`, `q1 = 4u`, `u^m[HP^m] = 1`.
pub fn hp_characteristic_data(m: usize) -> ManifoldCharData {
    let top = 4 * m as u32;
    let uvars = VarSet::new([("u", 4)]).unwrap();
    let one = GradedPolynomial::one(&uvars);
    let u = GradedPolynomial::var(&uvars, "u").unwrap();
    let four_u = u.scale(&Rational::from_integer(4.into()));
    let total = (&one + &u).with_cap(Some(top)).pow(2 * m as u32 + 2);
    let inv = (&one + &four_u).series_invert(top).unwrap();
    let p = &total * &inv;
    let mut classes: Vec<Rational> = (1..=m).map(|j| p.coeff_of(&[("u", j as u32)])).collect();
    classes.push(Rational::from_integer(4.into()));

    let vars = presentation_vars(m);
    let values = monomials_of_degree(&vars, top)
        .into_iter()
        .map(|mono| {
            let v = mono
                .exponents()
                .iter()
                .zip(&classes)
                .fold(Rational::one(), |acc, (&e, c)| {
                    acc * num_traits::pow(c.clone(), e as usize)
                });
            (mono, v)
        })
        .collect();
    ManifoldCharData::new(format!("HP{m}"), m, values).expect("all monomials are assigned")
}

/// Reads characteristic numbers from the JSON term schema.
pub fn parse_classes(s: &str) -> Result<ManifoldCharData> {
    let j: ClassesJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let m = classes_header(&j)?;
    let values = terms_from_json(&presentation_vars(m), &j.terms)?;
    ManifoldCharData::new(j.name, m, values)
}

pub fn evaluate_formula(f: &IndexFormula, data: &ManifoldCharData) -> Result<Rational> {
    if f.m != data.m {
        return Err(Error::InvalidInput(format!(
            "formula is for dimension {} but {} has dimension {}",
            4 * f.m,
            data.name,
            4 * data.m
        )));
    }
    let vars = f.expr.vars();
    let mut total = Rational::zero();
    for (mono, c) in f.expr.poly().terms() {
        let v = data
            .value(mono)
            .ok_or_else(|| Error::MissingValue(mono.display(vars)))?;
        total += c * v;
    }
    Ok(total)
}

/// An integer combination of index formulas whose `q1`-dependent
/// coefficients are all integers.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralityCondition {
    pub m: usize,
    pub ks: Vec<usize>,
    pub combo: Vec<BigInt>,
    pub residual: InvariantExpression,
}

impl IntegralityCondition {
    /// Terms of the residual that do not involve `q1`.
    pub fn q1_free_part(&self) -> InvariantExpression {
        let p = self.residual.poly();
        let q = p.vars().index_of("q1").expect("presentation has q1");
        let kept = p
            .terms()
            .filter(|(mono, _)| mono.exponents()[q] == 0)
            .map(|(mono, c)| (mono.clone(), c.clone()));
        InvariantExpression::new(GradedPolynomial::from_terms(p.vars(), kept))
    }

    /// The combination written as `a ind D_k + ...`.
    pub fn combination_label(&self) -> String {
        let mut out = String::new();
        for (a, k) in self.combo.iter().zip(&self.ks) {
            if a.is_zero() {
                continue;
            }
            let neg = a < &BigInt::zero();
            let abs = if neg { -a } else { a.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                out.push_str(&format!("{abs}*"));
            }
            out.push_str(&format!("ind D_{k}"));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for IntegralityCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {}",
            self.combination_label(),
            render::render_text(&self.residual)
        )
    }
}

/// The lattice of admissible combinations, as canonical HNF rows and an
/// LLL-reduced basis.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralityLattice {
    pub m: usize,
    pub ks: Vec<usize>,
    pub hnf: Vec<IntegralityCondition>,
    pub reduced: Vec<IntegralityCondition>,
    formulas: Vec<InvariantExpression>,
    hnf_rows: Vec<IntRow>,
}

impl IntegralityLattice {
    pub fn contains(&self, combo: &[BigInt]) -> bool {
        combo.len() == self.ks.len() && hnf_contains(&self.hnf_rows, combo)
    }

    /// The combination `sum a_i f_i` for any coefficient vector.
    pub fn combination(&self, combo: &[BigInt]) -> Result<IntegralityCondition> {
        if combo.len() != self.formulas.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} coefficients, got {}",
                self.formulas.len(),
                combo.len()
            )));
        }
        Ok(IntegralityCondition {
            m: self.m,
            ks: self.ks.clone(),
            combo: combo.to_vec(),
            residual: combine(&self.formulas, combo),
        })
    }

    /// HNF rows followed by reduced rows not already listed.
    pub fn conditions(&self) -> Vec<IntegralityCondition> {
        let mut out = self.hnf.clone();
        for c in &self.reduced {
            if !out.iter().any(|h| h.combo == c.combo) {
                out.push(c.clone());
            }
        }
        out
    }
}

fn combine(formulas: &[InvariantExpression], combo: &[BigInt]) -> InvariantExpression {
    let vars = formulas[0].vars();
    let mut acc = GradedPolynomial::zero(vars);
    for (f, a) in formulas.iter().zip(combo) {
        acc = &acc + &f.poly().scale(&Rational::from_integer(a.clone()));
    }
    InvariantExpression::new(acc)
}

pub fn integrality_lattice(formulas: &[IndexFormula]) -> Result<IntegralityLattice> {
    let first = formulas
        .first()
        .ok_or_else(|| Error::InvalidInput("no formulas given".into()))?;
    let m = first.m;
    if let Some(f) = formulas.iter().find(|f| f.m != m) {
        return Err(Error::InvalidInput(format!(
            "formulas mix dimensions {} and {}",
            4 * m,
            f.dim()
        )));
    }
    let vars = presentation_vars(m);
    let q = vars.index_of("q1").expect("presentation has q1");
    let q_monos: Vec<Monomial> = monomials_of_degree(&vars, 4 * m as u32)
        .into_iter()
        .filter(|mono| mono.exponents()[q] > 0)
        .collect();
    let coeffs: Vec<Vec<Rational>> = q_monos
        .iter()
        .map(|mono| formulas.iter().map(|f| f.expr.poly().coeff(mono)).collect())
        .collect();
    let modulus = coeffs
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let constraints: Vec<IntRow> = coeffs
        .iter()
        .map(|row| row.iter().map(|c| (c * &modulus).to_integer()).collect())
        .collect();
    let basis = congruence_lattice(formulas.len(), &constraints, &modulus);
    let hnf_rows = hermite_normal_form(&basis);
    let reduced_rows = lll_reduce(&hnf_rows);

    let exprs: Vec<InvariantExpression> = formulas.iter().map(|f| f.expr.clone()).collect();
    let ks: Vec<usize> = formulas.iter().map(|f| f.k).collect();
    let make = |rows: &[IntRow]| {
        rows.iter()
            .map(|combo| IntegralityCondition {
                m,
                ks: ks.clone(),
                combo: combo.clone(),
                residual: combine(&exprs, combo),
            })
            .collect::<Vec<_>>()
    };
    Ok(IntegralityLattice {
        m,
        ks: ks.clone(),
        hnf: make(&hnf_rows),
        reduced: make(&reduced_rows),
        formulas: exprs,
        hnf_rows,
    })
}

pub fn integrality_conditions(formulas: &[IndexFormula]) -> Result<Vec<IntegralityCondition>> {
    Ok(integrality_lattice(formulas)?.conditions())
}
