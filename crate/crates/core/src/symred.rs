//! Symmetric functions and the change of basis between root variables and
//! characteristic-class generators.
//!
//! Root variables are `y1..ym` (the `Sp(m)` roots) followed by `y` (the
//! `Sp(1)` root), all of degree 2. The order matters: it makes the leading
//! monomial of `d_j = e_j(y_l^2 - y^2)` equal to `y1^2..yj^2` and that of
//! `q1 = 4y^2` equal to `y^2`, so leading-term elimination is triangular.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{int, GradedPolynomial, Monomial, Rational, VarSet};

/// `y1..ym, y`, all of degree 2.
pub fn root_vars(m: usize) -> Arc<VarSet> {
    let mut vars: Vec<(String, u32)> = (1..=m).map(|l| (format!("y{l}"), 2)).collect();
    vars.push(("y".to_string(), 2));
    VarSet::new(vars).expect("root variables are well formed")
}

/// `p1..pm, q1` with degrees `4j` and 4. The declared order is the order in
/// which formulas are presented.
pub fn presentation_vars(m: usize) -> Arc<VarSet> {
    let mut vars: Vec<(String, u32)> = (1..=m).map(|j| (format!("p{j}"), 4 * j as u32)).collect();
    vars.push(("q1".to_string(), 4));
    VarSet::new(vars).expect("presentation variables are well formed")
}

/// `e_k` of the given polynomials.
pub fn elementary_symmetric(k: usize, vars: &[GradedPolynomial]) -> Result<GradedPolynomial> {
    if k > vars.len() {
        return Err(Error::IndexOutOfRange { k, n: vars.len() });
    }
    let Some(first) = vars.first() else {
        return Ok(GradedPolynomial::one(&VarSet::empty()));
    };
    let mut e = vec![GradedPolynomial::one(first.vars())];
    for v in vars {
        let next = &e[e.len() - 1] * v;
        e.push(next);
        for j in (1..e.len() - 1).rev() {
            e[j] = &e[j] + &(&e[j - 1] * v);
        }
    }
    Ok(e.swap_remove(k))
}

/// True iff `p` is fixed by `y -> -y`, every `yl -> -yl` and every adjacent
/// transposition `yl <-> y(l+1)`. Variables absent from `p`'s variable set
/// are treated as not occurring.
pub fn check_weyl_invariance(p: &GradedPolynomial, m: usize) -> bool {
    let vars = p.vars();
    let sign_vars = std::iter::once("y".to_string()).chain((1..=m).map(|l| format!("y{l}")));
    for name in sign_vars {
        if let Some(i) = vars.index_of(&name) {
            if p.terms().any(|(mono, _)| mono.exponents()[i] % 2 == 1) {
                return false;
            }
        }
    }
    for l in 1..m {
        let a = vars.index_of(&format!("y{l}"));
        let b = vars.index_of(&format!("y{}", l + 1));
        match (a, b) {
            (Some(i), Some(j)) => {
                for (mono, c) in p.terms() {
                    let mut e = mono.exponents().to_vec();
                    e.swap(i, j);
                    if p.coeff(&Monomial::from_exponents(&e)) != *c {
                        return false;
                    }
                }
            }
            (Some(i), None) | (None, Some(i)) => {
                if p.terms().any(|(mono, _)| mono.exponents()[i] > 0) {
                    return false;
                }
            }
            (None, None) => {}
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub definition: GradedPolynomial,
    pub degree: u32,
}

/// An ordered list of algebraically independent generators, each given by
/// its expansion in root variables.
#[derive(Clone, Debug)]
pub struct GeneratorBasis {
    roots: Arc<VarSet>,
    generators: Vec<Generator>,
    generator_vars: Arc<VarSet>,
    leading: Vec<(Monomial, Rational)>,
    // processing order: decreasing degree, then declared order
    order: Vec<usize>,
}

impl GeneratorBasis {
    pub fn new(roots: &Arc<VarSet>, generators: Vec<(String, GradedPolynomial)>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        let mut leading = Vec::with_capacity(generators.len());
        for (name, def) in generators {
            let def = def.embed(roots)?.with_cap(None);
            let degree = match def.max_degree() {
                Some(d) if d > 0 && def.is_homogeneous() => d,
                _ => {
                    return Err(Error::GeneratorDegree {
                        name,
                        declared: def.max_degree().unwrap_or(0),
                    })
                }
            };
            let (lm, lc) = def.leading_term().expect("nonzero definition");
            leading.push((lm.clone(), lc.clone()));
            gens.push(Generator {
                name,
                definition: def,
                degree,
            });
        }
        let generator_vars = VarSet::new(gens.iter().map(|g| (g.name.clone(), g.degree)))?;
        let mut order: Vec<usize> = (0..gens.len()).collect();
        order.sort_by(|&a, &b| gens[b].degree.cmp(&gens[a].degree).then(a.cmp(&b)));
        Ok(GeneratorBasis {
            roots: roots.clone(),
            generators: gens,
            generator_vars,
            leading,
            order,
        })
    }

    /// Checks the declared degree of a named generator against its definition.
    pub fn with_declared_degrees(self, declared: &[(&str, u32)]) -> Result<Self> {
        for &(name, degree) in declared {
            let g = self
                .generators
                .iter()
                .find(|g| g.name == name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            if g.degree != degree {
                return Err(Error::GeneratorDegree {
                    name: name.to_string(),
                    declared: degree,
                });
            }
        }
        Ok(self)
    }

    /// `{q1 = 4y^2, d_j = e_j(u_1..u_m)}` with `u_l = y_l^2 - y^2`.
    pub fn quaternionic(m: usize) -> Self {
        let roots = root_vars(m);
        let us = u_variables(m);
        let y = GradedPolynomial::var(&roots, "y").unwrap();
        let mut gens = vec![("q1".to_string(), (&y * &y).scale(&int(4)))];
        for j in 1..=m {
            gens.push((format!("d{j}"), elementary_symmetric(j, &us).unwrap()));
        }
        Self::new(&roots, gens).expect("quaternionic basis is valid")
    }

    /// Even Chern classes `c_{2j} = e_j(-y_1^2, .., -y_m^2)` of the standard
    /// `Sp(m)` bundle.
    pub fn even_chern(m: usize) -> Self {
        let roots = root_vars(m);
        let neg_squares: Vec<GradedPolynomial> = (1..=m)
            .map(|l| {
                let v = GradedPolynomial::var(&roots, &format!("y{l}")).unwrap();
                -(&v * &v)
            })
            .collect();
        let gens = (1..=m)
            .map(|j| {
                (
                    format!("c{}", 2 * j),
                    elementary_symmetric(j, &neg_squares).unwrap(),
                )
            })
            .collect();
        Self::new(&roots, gens).expect("Chern basis is valid")
    }

    pub fn roots(&self) -> &Arc<VarSet> {
        &self.roots
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_vars(&self) -> &Arc<VarSet> {
        &self.generator_vars
    }

    /// Expands an expression in the generators back into root variables.
    pub fn expand(&self, expr: &InvariantExpression) -> Result<GradedPolynomial> {
        let mut asg = BTreeMap::new();
        for g in &self.generators {
            asg.insert(g.name.clone(), g.definition.clone());
        }
        expr.poly().substitute_and_truncate(&asg, &self.roots, None)
    }

    /// Generator monomials whose leading monomial is `target`. At most two
    /// are collected, which is enough to detect ambiguity.
    fn preimages(&self, target: &Monomial) -> Vec<Vec<u32>> {
        let mut found = Vec::new();
        let mut exps = vec![0u32; self.generators.len()];
        self.search(0, target.exponents().to_vec(), &mut exps, &mut found);
        found
    }

    fn search(&self, pos: usize, rest: Vec<u32>, exps: &mut Vec<u32>, found: &mut Vec<Vec<u32>>) {
        if found.len() >= 2 {
            return;
        }
        if pos == self.order.len() {
            if rest.iter().all(|&e| e == 0) {
                found.push(exps.clone());
            }
            return;
        }
        let g = self.order[pos];
        let lm = self.leading[g].0.exponents();
        let max = lm
            .iter()
            .zip(&rest)
            .filter(|(&l, _)| l > 0)
            .map(|(&l, &r)| r / l)
            .min()
            .unwrap_or(0);
        for a in (0..=max).rev() {
            let next: Vec<u32> = rest.iter().zip(lm).map(|(&r, &l)| r - a * l).collect();
            exps[g] = a;
            self.search(pos + 1, next, exps, found);
            exps[g] = 0;
        }
    }
}

fn u_variables(m: usize) -> Vec<GradedPolynomial> {
    let roots = root_vars(m);
    let y = GradedPolynomial::var(&roots, "y").unwrap();
    let y2 = &y * &y;
    (1..=m)
        .map(|l| {
            let v = GradedPolynomial::var(&roots, &format!("y{l}")).unwrap();
            &(&v * &v) - &y2
        })
        .collect()
}

/// A polynomial in abstract generator names.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantExpression(GradedPolynomial);

impl InvariantExpression {
    pub fn new(poly: GradedPolynomial) -> Self {
        InvariantExpression(poly.with_cap(None))
    }

    pub fn poly(&self) -> &GradedPolynomial {
        &self.0
    }

    pub fn into_poly(self) -> GradedPolynomial {
        self.0
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        self.0.vars()
    }

    pub fn coeff_of(&self, exps: &[(&str, u32)]) -> Rational {
        self.0.coeff_of(exps)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Terms in presentation order: descending lexicographic in the declared
    /// generator order.
    pub fn ordered_terms(&self) -> Vec<(Vec<(String, u32)>, Rational)> {
        self.0
            .terms()
            .rev()
            .map(|(m, c)| (m.named(self.0.vars()), c.clone()))
            .collect()
    }

    /// True if every homogeneous piece of the expression has the same degree.
    pub fn is_homogeneous(&self) -> bool {
        self.0.is_homogeneous()
    }
}

impl fmt::Display for InvariantExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Writes an invariant polynomial in root variables as a polynomial in the
/// generators of `basis`, by repeatedly cancelling the leading term.
pub fn express_in_generators(
    p: &GradedPolynomial,
    basis: &GeneratorBasis,
) -> Result<InvariantExpression> {
    let mut rem = match p.embed(&basis.roots) {
        Ok(q) => q.with_cap(None),
        Err(Error::UnknownVariable(v)) => return Err(Error::NotExpressible(v)),
        Err(e) => return Err(e),
    };
    let gvars = basis.generator_vars.clone();
    let mut out = GradedPolynomial::zero(&gvars);
    let mut powers: HashMap<(usize, u32), GradedPolynomial> = HashMap::new();
    while let Some((lm, lc)) = rem.leading_term() {
        let (lm, lc) = (lm.clone(), lc.clone());
        let found = basis.preimages(&lm);
        let exps = match found.len() {
            0 => return Err(Error::NotExpressible(lm.display(&basis.roots))),
            1 => &found[0],
            _ => return Err(Error::AmbiguousBasis(lm.display(&basis.roots))),
        };
        let mut expansion = GradedPolynomial::one(&basis.roots);
        let mut lead = Rational::one();
        for (g, &a) in exps.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let pw = powers
                .entry((g, a))
                .or_insert_with(|| basis.generators[g].definition.pow(a));
            expansion = &expansion * pw;
            for _ in 0..a {
                lead *= &basis.leading[g].1;
            }
        }
        let coeff = lc / lead;
        rem = &rem - &expansion.scale(&coeff);
        out.add_term_mut(Monomial::from_exponents(exps), coeff);
    }
    Ok(InvariantExpression::new(out))
}

/// Root-variable definitions of `p_1..p_m`: the degree-`4j` parts of
/// `prod_l ((1 + u_l)^2 + q1)` with `u_l = y_l^2 - y^2`, `q1 = 4y^2`.
pub fn pontryagin_definitions(m: usize) -> Vec<GradedPolynomial> {
    let roots = root_vars(m);
    let one = GradedPolynomial::one(&roots);
    let y = GradedPolynomial::var(&roots, "y").unwrap();
    let q1 = (&y * &y).scale(&int(4));
    let mut total = one.clone();
    for u in u_variables(m) {
        let s = &one + &u;
        total = &total * &(&(&s * &s) + &q1);
    }
    (1..=m)
        .map(|j| total.homogeneous_part(4 * j as u32))
        .collect()
}

/// Images of `q1, d_1..d_m` as polynomials in `p_1..p_m, q1`.
///
/// Each `p_j` expands as `c_j d_j + R_j(d_1..d_{j-1}, q1)` with `c_j != 0`,
/// so the relation can be inverted one degree at a time.
pub fn d_in_pontryagin(m: usize) -> Result<BTreeMap<String, GradedPolynomial>> {
    let basis = GeneratorBasis::quaternionic(m);
    let pvars = presentation_vars(m);
    let mut images = BTreeMap::new();
    images.insert("q1".to_string(), GradedPolynomial::var(&pvars, "q1")?);
    for (j, def) in (1..=m).zip(pontryagin_definitions(m)) {
        let expr = express_in_generators(&def, &basis)?;
        let dj = format!("d{j}");
        let lin = expr.coeff_of(&[(&dj, 1)]);
        if lin.is_zero() {
            return Err(Error::NotExpressible(format!(
                "p{j} has no linear d{j} term"
            )));
        }
        let linear = GradedPolynomial::monomial(expr.vars(), &[(&dj, 1)], lin.clone())?;
        let rest = expr.poly() - &linear;
        if rest
            .used_vars()
            .iter()
            .any(|v| v.starts_with('d') && v[1..].parse::<usize>().map_or(true, |i| i >= j))
        {
            return Err(Error::NotExpressible(format!(
                "p{j} is not triangular in d"
            )));
        }
        let rest_in_p = rest.substitute_and_truncate(&images, &pvars, None)?;
        let pj = GradedPolynomial::var(&pvars, &format!("p{j}"))?;
        images.insert(dj, (&pj - &rest_in_p).scale(&lin.recip()));
    }
    Ok(images)
}

/// Rewrites an expression in `q1, d_1..d_m` in terms of `p_1..p_m, q1`.
pub fn to_pontryagin_basis(expr: &InvariantExpression, m: usize) -> Result<InvariantExpression> {
    let images = d_in_pontryagin(m)?;
    let p = expr
        .poly()
        .substitute_and_truncate(&images, &presentation_vars(m), None)?;
    Ok(InvariantExpression::new(p))
}

/// Expresses a Weyl-invariant polynomial in root variables directly in the
/// presentation basis `p_1..p_m, q1`.
pub fn express_in_pontryagin(p: &GradedPolynomial, m: usize) -> Result<InvariantExpression> {
    let in_d = express_in_generators(p, &GeneratorBasis::quaternionic(m))?;
    to_pontryagin_basis(&in_d, m)
}
