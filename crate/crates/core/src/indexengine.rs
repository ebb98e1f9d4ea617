//! The index pipeline: alternating Chern-character numerator, division by the
//! Euler class, Todd correction, and conversion to the `p_1..p_m, q1` basis.

use std::collections::BTreeMap;
use std::fmt;

use crate::charclass::{
    chern_character, lambda_t_coefficients, roots_from_weights, tangent_euler_and_todd, todd_class,
    universal_euler_class, ChernRootSet,
};
use crate::error::{Error, Result};
use crate::exactalg::{int, GradedPolynomial};
use crate::repweights::build_module_pair;
use crate::symred::{
    express_in_generators, express_in_pontryagin, pontryagin_definitions, presentation_vars,
    root_vars, GeneratorBasis, InvariantExpression,
};

/// Global sign applied to the top-degree class. `+1` gives `ind D_0 = 1` on
/// `HP^2`.
pub const ORIENTATION_SIGN: i64 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    /// Truncation degree of the numerator and Euler class; `None` means `8m`.
    pub cap: Option<u32>,
    pub orientation: i64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            cap: None,
            orientation: ORIENTATION_SIGN,
        }
    }
}

impl EngineConfig {
    fn numerator_cap(&self, m: usize) -> Result<u32> {
        let min = 8 * m as u32;
        match self.cap {
            None => Ok(min),
            Some(c) if c >= min => Ok(c),
            Some(c) => Err(Error::InvalidInput(format!(
                "cap {c} is below {min}, the degree needed to determine the quotient up to {}",
                4 * m
            ))),
        }
    }
}

/// Index of `D_k` on a `4m`-manifold as a polynomial in `p_1..p_m, q1`.
#[derive(Clone, Debug, PartialEq)]
pub struct IndexFormula {
    pub m: usize,
    pub k: usize,
    pub expr: InvariantExpression,
}

impl IndexFormula {
    pub fn new(m: usize, k: usize, expr: InvariantExpression) -> Result<Self> {
        let expected = presentation_vars(m);
        if expr.vars().names() != expected.names() {
            return Err(Error::InvalidInput(format!(
                "formula must use generators {}",
                expected.names().join(", ")
            )));
        }
        if !expr.is_zero()
            && !(expr.is_homogeneous() && expr.poly().max_degree() == Some(4 * m as u32))
        {
            return Err(Error::InvalidInput(format!(
                "formula is not homogeneous of degree {}",
                4 * m
            )));
        }
        Ok(IndexFormula { m, k, expr })
    }

    pub fn dim(&self) -> usize {
        4 * self.m
    }
}

impl fmt::Display for IndexFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expr)
    }
}

fn check_m(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidInput(format!(
            "m must be at least 2, got {m}"
        )));
    }
    Ok(())
}

/// Chern character of one `W_k^j`, in the root variables of `root_vars(m)`.
pub fn module_character(m: usize, k: usize, j: usize, cap: u32) -> Result<GradedPolynomial> {
    let vars = root_vars(m);
    let pair = build_module_pair(m, k, j)?;
    let e = roots_from_weights(&pair.e_factor, &vars)?;
    let f = roots_from_weights(&pair.f_factor, &vars)?;
    Ok(chern_character(&e, cap).value() * chern_character(&f, cap).value())
}

/// `sum_{j=0}^{2m} (-1)^j ch(W_k^j)` truncated at `cap`.
pub fn alternating_numerator(m: usize, k: usize, cap: u32) -> Result<GradedPolynomial> {
    check_m(m)?;
    let mut acc = GradedPolynomial::zero(&root_vars(m)).with_cap(Some(cap));
    for j in 0..=2 * m {
        let ch = module_character(m, k, j, cap)?;
        acc = if j % 2 == 0 { &acc + &ch } else { &acc - &ch };
    }
    Ok(acc)
}

/// Solves `x * e = numerator` for `x` up to degree `4m`.
pub fn solve_universal_equation(
    numerator: &GradedPolynomial,
    m: usize,
) -> Result<GradedPolynomial> {
    let cap = numerator.cap().unwrap_or(8 * m as u32);
    let x = numerator
        .clone()
        .with_cap(Some(cap))
        .exact_divide(&universal_euler_class(m))?;
    Ok(x.truncate(4 * m as u32))
}

/// Degree-`4m` part of `x * td(TM ⊗ C)` in root variables, with the
/// orientation sign applied.
pub fn top_class(
    numerator: &GradedPolynomial,
    m: usize,
    orientation: i64,
) -> Result<GradedPolynomial> {
    let top = 4 * m as u32;
    let x = solve_universal_equation(numerator, m)?;
    let (_, todd) = tangent_euler_and_todd(m, top);
    let product = (&x * todd.value()).homogeneous_part(top).with_cap(None);
    Ok(product.scale(&int(orientation)))
}

pub fn index_formula(m: usize, k: usize) -> Result<IndexFormula> {
    index_formula_with(m, k, &EngineConfig::default())
}

pub fn index_formula_with(m: usize, k: usize, config: &EngineConfig) -> Result<IndexFormula> {
    check_m(m)?;
    let cap = config.numerator_cap(m)?;
    let numerator = alternating_numerator(m, k, cap)?;
    let top = top_class(&numerator, m, config.orientation)?;
    IndexFormula::new(m, k, express_in_pontryagin(&top, m)?)
}

/// The `k = 0` index with the `Sp(1)` root set to zero, in the even Chern
/// classes `c_2, c_4, ..` of `F`.
pub fn glmh_specialization(m: usize) -> Result<InvariantExpression> {
    check_m(m)?;
    let numerator = alternating_numerator(m, 0, 8 * m as u32)?;
    let top = top_class(&numerator, m, ORIENTATION_SIGN)?;
    express_in_generators(&top.set_to_zero(&["y"]), &GeneratorBasis::even_chern(m))
}

fn standard_roots(m: usize) -> Result<ChernRootSet> {
    let pair = build_module_pair(m, 0, 1)?;
    roots_from_weights(&pair.f_factor, &root_vars(m))
}

/// Degree-`4m` part of `td(F)` in the even Chern classes of `F`.
pub fn todd_top_in_chern(m: usize) -> Result<InvariantExpression> {
    let top = 4 * m as u32;
    let td = todd_class(&standard_roots(m)?, top);
    express_in_generators(&td.top(top), &GeneratorBasis::even_chern(m))
}

/// Images of `p_1..p_m, q1` in the even Chern classes of `F` when the
/// `Sp(1)` part is trivial.
pub fn pontryagin_in_chern(m: usize) -> Result<BTreeMap<String, GradedPolynomial>> {
    let basis = GeneratorBasis::even_chern(m);
    let mut images = BTreeMap::new();
    for (j, p) in pontryagin_definitions(m).iter().enumerate() {
        let e = express_in_generators(&p.set_to_zero(&["y"]), &basis)?;
        images.insert(format!("p{}", j + 1), e.into_poly());
    }
    images.insert(
        "q1".to_string(),
        GradedPolynomial::zero(basis.generator_vars()),
    );
    Ok(images)
}

/// Rewrites a formula in `p, q1` as a polynomial in the even Chern classes
/// of `F`, with `q1 = 0`.
pub fn specialize_to_chern(f: &IndexFormula) -> Result<InvariantExpression> {
    let images = pontryagin_in_chern(f.m)?;
    let target = GeneratorBasis::even_chern(f.m).generator_vars().clone();
    Ok(InvariantExpression::new(
        f.expr
            .poly()
            .substitute_and_truncate(&images, &target, None)?,
    ))
}

/// Both sides of `sum_j (-1)^j (j+1) ch Λ^j F = (m+1) prod_l (1 - e^{y_l})(1 - e^{-y_l})`.
///
/// The left side is `d/dt (t ch Λ_t F)` at `t = -1`, read off the
/// coefficients of `t^j`.
pub fn salamon_sides(m: usize, cap: u32) -> Result<(GradedPolynomial, GradedPolynomial)> {
    let vars = root_vars(m);
    let coeffs = lambda_t_coefficients(&standard_roots(m)?, cap);
    let mut lhs = GradedPolynomial::zero(&vars).with_cap(Some(cap));
    for (j, c) in coeffs.iter().enumerate() {
        let w = int(j as i64 + 1);
        lhs = if j % 2 == 0 {
            &lhs + &c.scale(&w)
        } else {
            &lhs - &c.scale(&w)
        };
    }
    let one = GradedPolynomial::one(&vars).with_cap(Some(cap));
    let mut rhs = one.scale(&int(m as i64 + 1));
    for l in 1..=m {
        let yl = GradedPolynomial::var(&vars, &format!("y{l}"))?;
        let a = &one - &yl.series_exp(cap)?;
        let b = &one - &(-&yl).series_exp(cap)?;
        rhs = &(&rhs * &a) * &b;
    }
    Ok((lhs, rhs))
}

pub fn salamon_character_identity(m: usize, cap: u32) -> bool {
    match salamon_sides(m, cap) {
        Ok((lhs, rhs)) => (&lhs - &rhs).truncate(cap).is_zero(),
        Err(_) => false,
    }
}
