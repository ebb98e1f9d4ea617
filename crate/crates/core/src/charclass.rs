//! Characteristic series built from Chern roots: total Chern class, Chern
//! character, Todd class, the `Λ_t` character, and the Euler and Todd
//! classes of the universal tangent bundle.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{factorial, int, GradedPolynomial, Monomial, Rational, VarSet};
use crate::repweights::{CoordSystem, WeightSystem};
use crate::symred::root_vars;

/// Degree-2 Chern roots, repeated according to multiplicity.
#[derive(Clone, Debug)]
pub struct ChernRootSet {
    vars: Arc<VarSet>,
    roots: Vec<GradedPolynomial>,
}

type RootKey = Vec<(Monomial, Rational)>;

fn root_key(r: &GradedPolynomial) -> RootKey {
    r.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

impl ChernRootSet {
    pub fn new(vars: &Arc<VarSet>, roots: Vec<GradedPolynomial>) -> Result<Self> {
        let mut out = Vec::with_capacity(roots.len());
        for r in roots {
            let r = r.embed(vars)?.with_cap(None);
            if !r.is_zero() && !(r.is_homogeneous() && r.max_degree() == Some(2)) {
                return Err(Error::InvalidInput(format!(
                    "Chern root {r} is not of degree 2"
                )));
            }
            out.push(r);
        }
        Ok(ChernRootSet {
            vars: vars.clone(),
            roots: out,
        })
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn roots(&self) -> &[GradedPolynomial] {
        &self.roots
    }

    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    pub fn concat(&self, other: &ChernRootSet) -> Result<ChernRootSet> {
        let mut roots = self.roots.clone();
        roots.extend(other.roots.iter().cloned());
        ChernRootSet::new(&self.vars, roots)
    }

    /// Roots of `Λ^j`: sums over all `j`-element subsets.
    pub fn exterior_power(&self, j: usize) -> ChernRootSet {
        let mut out = Vec::new();
        let n = self.roots.len();
        if j <= n {
            let mut idx: Vec<usize> = (0..j).collect();
            loop {
                let mut s = GradedPolynomial::zero(&self.vars);
                for &i in &idx {
                    s = &s + &self.roots[i];
                }
                out.push(s);
                // next combination
                let mut p = j;
                while p > 0 && idx[p - 1] == n - j + p - 1 {
                    p -= 1;
                }
                if p == 0 {
                    break;
                }
                idx[p - 1] += 1;
                for q in p..j {
                    idx[q] = idx[q - 1] + 1;
                }
            }
        }
        ChernRootSet {
            vars: self.vars.clone(),
            roots: out,
        }
    }

    /// Distinct roots with their multiplicities, in first-seen order.
    fn grouped(&self) -> Vec<(&GradedPolynomial, u64)> {
        let mut seen: HashMap<RootKey, usize> = HashMap::new();
        let mut out: Vec<(&GradedPolynomial, u64)> = Vec::new();
        for r in &self.roots {
            let key = root_key(r);
            match seen.get(&key) {
                Some(&i) => out[i].1 += 1,
                None => {
                    seen.insert(key, out.len());
                    out.push((r, 1));
                }
            }
        }
        out
    }
}

/// A characteristic class as a capped series in root variables.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacteristicSeries {
    value: GradedPolynomial,
}

impl CharacteristicSeries {
    pub fn new(value: GradedPolynomial) -> Self {
        CharacteristicSeries { value }
    }

    pub fn value(&self) -> &GradedPolynomial {
        &self.value
    }

    pub fn into_value(self) -> GradedPolynomial {
        self.value
    }

    pub fn top(&self, degree: u32) -> GradedPolynomial {
        self.value.homogeneous_part(degree)
    }
}

/// Roots from `Sp(1)` weights (coordinate times `y`) or `Sp(m)` weights
/// (`sum_l c_l y_l`).
pub fn roots_from_weights(ws: &WeightSystem, vars: &Arc<VarSet>) -> Result<ChernRootSet> {
    let names: Vec<String> = match ws.system() {
        CoordSystem::Sp1 => vec!["y".to_string()],
        CoordSystem::SpX(m) => (1..=m).map(|l| format!("y{l}")).collect(),
        CoordSystem::SlZ(_) => {
            return Err(Error::CoordinateMismatch(
                "Chern roots need Sp(1) or Sp(m) weights".into(),
            ))
        }
    };
    let idx: Vec<usize> = names
        .iter()
        .map(|n| {
            vars.index_of(n)
                .ok_or_else(|| Error::UnknownVariable(n.clone()))
        })
        .collect::<Result<_>>()?;
    let mut roots = Vec::with_capacity(ws.dimension() as usize);
    for (w, mult) in ws.iter() {
        let terms = w
            .coords()
            .iter()
            .zip(&idx)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, &i)| {
                let mut e = vec![0u32; vars.len()];
                e[i] = 1;
                (Monomial::from_exponents(&e), int(c))
            });
        let r = GradedPolynomial::from_terms(vars, terms);
        for _ in 0..mult {
            roots.push(r.clone());
        }
    }
    Ok(ChernRootSet {
        vars: vars.clone(),
        roots,
    })
}

/// `prod (1 + r)`.
pub fn total_chern(rs: &ChernRootSet, cap: Option<u32>) -> CharacteristicSeries {
    let one = GradedPolynomial::one(&rs.vars).with_cap(cap);
    let value = rs
        .roots
        .iter()
        .fold(one.clone(), |acc, r| &acc * &(&one + r));
    CharacteristicSeries::new(value)
}

/// `sum exp(r)`.
pub fn chern_character(rs: &ChernRootSet, cap: u32) -> CharacteristicSeries {
    let mut value = GradedPolynomial::zero(&rs.vars).with_cap(Some(cap));
    for (r, mult) in rs.grouped() {
        let e = r.series_exp(cap).expect("roots have no constant term");
        value = &value + &e.scale(&int(mult as i64));
    }
    CharacteristicSeries::new(value)
}

fn series_var() -> Arc<VarSet> {
    VarSet::new([("t", 2)]).unwrap()
}

fn univariate(coeffs: impl IntoIterator<Item = (u32, Rational)>) -> GradedPolynomial {
    let v = series_var();
    GradedPolynomial::from_terms(
        &v,
        coeffs
            .into_iter()
            .map(|(e, c)| (Monomial::from_exponents(&[e]), c)),
    )
}

/// `t / (1 - e^{-t})`, obtained by inverting `(1 - e^{-t}) / t = sum (-1)^n t^n / (n+1)!`.
pub fn todd_factor_series(cap: u32) -> GradedPolynomial {
    let n = cap / 2;
    let s = univariate((0..=n).map(|i| {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        (i, Rational::new(BigInt::from(sign), factorial(i + 1)))
    }));
    s.series_invert(cap).expect("constant term is 1")
}

/// `T(t) T(-t) = t^2 / (e^t + e^{-t} - 2)`, as an even series, obtained by
/// inverting `sum 2 t^{2n} / (2n+2)!`.
pub fn paired_todd_series(cap: u32) -> GradedPolynomial {
    let n = cap / 4;
    let s =
        univariate((0..=n).map(|i| (2 * i, Rational::new(BigInt::from(2), factorial(2 * i + 2)))));
    s.series_invert(cap).expect("constant term is 1")
}

fn compose(
    series: &GradedPolynomial,
    r: &GradedPolynomial,
    vars: &Arc<VarSet>,
    cap: u32,
) -> GradedPolynomial {
    let mut asg = BTreeMap::new();
    asg.insert("t".to_string(), r.clone());
    series
        .substitute_and_truncate(&asg, vars, Some(cap))
        .expect("roots are homogeneous of degree 2")
}

/// `prod r / (1 - e^{-r})`. A root `r` that appears together with `-r` is
/// handled as one even factor; zero roots contribute 1.
pub fn todd_class(rs: &ChernRootSet, cap: u32) -> CharacteristicSeries {
    let single = todd_factor_series(cap);
    let paired = paired_todd_series(cap);
    let mut unmatched: HashMap<RootKey, Vec<usize>> = HashMap::new();
    let mut factors: Vec<(usize, bool)> = Vec::new();
    for (i, r) in rs.roots.iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        let neg = root_key(&-r);
        if let Some(list) = unmatched.get_mut(&neg) {
            if let Some(j) = list.pop() {
                factors.push((j, true));
                continue;
            }
        }
        unmatched.entry(root_key(r)).or_default().push(i);
    }
    let mut leftovers: Vec<usize> = unmatched.into_values().flatten().collect();
    leftovers.sort_unstable();
    factors.extend(leftovers.into_iter().map(|i| (i, false)));
    factors.sort_unstable();

    let mut value = GradedPolynomial::one(&rs.vars).with_cap(Some(cap));
    let mut cache: HashMap<(RootKey, bool), GradedPolynomial> = HashMap::new();
    for (i, is_pair) in factors {
        let r = &rs.roots[i];
        let f = cache
            .entry((root_key(r), is_pair))
            .or_insert_with(|| compose(if is_pair { &paired } else { &single }, r, &rs.vars, cap));
        value = &value * f;
    }
    CharacteristicSeries::new(value)
}

/// Coefficients `ch Λ^j` of `t^j` in `prod (1 + t e^r)`, for `j = 0..=rank`.
pub fn lambda_t_coefficients(rs: &ChernRootSet, cap: u32) -> Vec<GradedPolynomial> {
    let mut coeffs = vec![GradedPolynomial::one(&rs.vars).with_cap(Some(cap))];
    for r in &rs.roots {
        let e = r.series_exp(cap).expect("roots have no constant term");
        let top = &coeffs[coeffs.len() - 1] * &e;
        coeffs.push(top);
        for j in (1..coeffs.len() - 1).rev() {
            coeffs[j] = &coeffs[j] + &(&coeffs[j - 1] * &e);
        }
    }
    coeffs
}

/// `prod (1 + t e^r)` at a rational `t`.
pub fn lambda_t_character(rs: &ChernRootSet, t: &Rational, cap: u32) -> CharacteristicSeries {
    let one = GradedPolynomial::one(&rs.vars).with_cap(Some(cap));
    let mut value = one.clone();
    if t.is_zero() {
        return CharacteristicSeries::new(value);
    }
    for (r, mult) in rs.grouped() {
        let e = r.series_exp(cap).expect("roots have no constant term");
        let factor = &one + &e.scale(t);
        for _ in 0..mult {
            value = &value * &factor;
        }
    }
    CharacteristicSeries::new(value)
}

/// Chern roots `±(y + y_l), ±(y - y_l)` of the complexified universal tangent bundle.
pub fn tangent_roots(m: usize) -> ChernRootSet {
    let vars = root_vars(m);
    let y = GradedPolynomial::var(&vars, "y").unwrap();
    let mut roots = Vec::with_capacity(4 * m);
    for l in 1..=m {
        let yl = GradedPolynomial::var(&vars, &format!("y{l}")).unwrap();
        let plus = &y + &yl;
        let minus = &y - &yl;
        roots.push(-&plus);
        roots.push(plus);
        roots.push(-&minus);
        roots.push(minus);
    }
    ChernRootSet { vars, roots }
}

/// Euler class `prod_l (y_l^2 - y^2)` of the universal bundle.
pub fn universal_euler_class(m: usize) -> GradedPolynomial {
    let vars = root_vars(m);
    let y = GradedPolynomial::var(&vars, "y").unwrap();
    let y2 = &y * &y;
    let mut euler = GradedPolynomial::one(&vars);
    for l in 1..=m {
        let yl = GradedPolynomial::var(&vars, &format!("y{l}")).unwrap();
        euler = &euler * &(&(&yl * &yl) - &y2);
    }
    euler
}

/// Euler class and Todd class of `TM ⊗ C` for the universal `Sp(1)Sp(m)`
/// bundle.
pub fn tangent_euler_and_todd(m: usize, cap: u32) -> (GradedPolynomial, CharacteristicSeries) {
    (universal_euler_class(m), todd_class(&tangent_roots(m), cap))
}

/// Whether every coefficient of `a - b` vanishes up to `cap`.
pub fn agree_up_to(a: &GradedPolynomial, b: &GradedPolynomial, cap: u32) -> bool {
    (a - b).truncate(cap).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::repweights::{sp1_symmetric_power_weights, Weight};

    fn y_vars() -> Arc<VarSet> {
        root_vars(2)
    }

    fn f_weights(m: usize) -> WeightSystem {
        let mut ws = WeightSystem::new(CoordSystem::SpX(m));
        for l in 0..m {
            for s in [1, -1] {
                let mut c = vec![0; m];
                c[l] = s;
                ws.insert(&Weight::new(CoordSystem::SpX(m), c).unwrap(), 1)
                    .unwrap();
            }
        }
        ws
    }

    fn y_poly(vars: &Arc<VarSet>, coeffs: &[(u32, Rational)]) -> GradedPolynomial {
        let i = vars.index_of("y").unwrap();
        GradedPolynomial::from_terms(
            vars,
            coeffs.iter().map(|(e, c)| {
                let mut ex = vec![0; vars.len()];
                ex[i] = *e;
                (Monomial::from_exponents(&ex), c.clone())
            }),
        )
    }

    #[test]
    fn roots_of_e_and_f() {
        let vars = y_vars();
        let e = roots_from_weights(&sp1_symmetric_power_weights(1).unwrap(), &vars).unwrap();
        let y = GradedPolynomial::var(&vars, "y").unwrap();
        assert_eq!(e.roots(), &[-&y, y.clone()]);
        let f = roots_from_weights(&f_weights(2), &vars).unwrap();
        assert_eq!(f.rank(), 4);
        let zero = roots_from_weights(&sp1_symmetric_power_weights(0).unwrap(), &vars).unwrap();
        assert!(zero.roots()[0].is_zero());
    }

    #[test]
    fn total_chern_examples() {
        let vars = y_vars();
        let f = roots_from_weights(&f_weights(2), &vars).unwrap();
        let c = total_chern(&f, None);
        let y1 = GradedPolynomial::var(&vars, "y1").unwrap();
        let y2 = GradedPolynomial::var(&vars, "y2").unwrap();
        let one = GradedPolynomial::one(&vars);
        assert_eq!(*c.value(), &(&one - &(&y1 * &y1)) * &(&one - &(&y2 * &y2)));
        for d in [2, 6] {
            assert!(c.value().homogeneous_part(d).is_zero());
        }

        let e = roots_from_weights(&sp1_symmetric_power_weights(1).unwrap(), &vars).unwrap();
        assert_eq!(
            *total_chern(&e, None).value(),
            y_poly(&vars, &[(0, int(1)), (2, int(-1))])
        );
        let s2 = roots_from_weights(&sp1_symmetric_power_weights(2).unwrap(), &vars).unwrap();
        assert_eq!(
            *total_chern(&s2, None).value(),
            y_poly(&vars, &[(0, int(1)), (2, int(-4))])
        );
    }

    #[test]
    fn chern_character_of_e() {
        let vars = y_vars();
        let e = roots_from_weights(&sp1_symmetric_power_weights(1).unwrap(), &vars).unwrap();
        let ch = chern_character(&e, 8);
        assert_eq!(
            *ch.value(),
            y_poly(&vars, &[(0, int(2)), (2, int(1)), (4, rat(1, 12))])
        );
        let trivial = roots_from_weights(&sp1_symmetric_power_weights(0).unwrap(), &vars).unwrap();
        assert_eq!(
            *chern_character(&trivial, 8).value(),
            GradedPolynomial::one(&vars)
        );
        assert_eq!(ch.value().constant_term(), int(2));
    }

    #[test]
    fn chern_character_is_additive() {
        let vars = y_vars();
        let a = roots_from_weights(&sp1_symmetric_power_weights(3).unwrap(), &vars).unwrap();
        let b = roots_from_weights(&f_weights(2), &vars).unwrap();
        let sum = chern_character(&a.concat(&b).unwrap(), 8);
        assert_eq!(
            *sum.value(),
            chern_character(&a, 8).value() + chern_character(&b, 8).value()
        );
    }

    #[test]
    fn todd_of_single_root() {
        // y/(1-e^{-y}) = 1 + y/2 + y^2/12 - y^4/720 + ...
        let vars = y_vars();
        let y = GradedPolynomial::var(&vars, "y").unwrap();
        let rs = ChernRootSet::new(&vars, vec![y.clone()]).unwrap();
        let td = todd_class(&rs, 8);
        let expect = y_poly(
            &vars,
            &[
                (0, int(1)),
                (1, rat(1, 2)),
                (2, rat(1, 12)),
                (4, rat(-1, 720)),
            ],
        );
        assert_eq!(*td.value(), expect);
        // the series times (1 - e^{-y})/y is 1
        let check = &td.value().truncate(8)
            * &(&GradedPolynomial::one(&vars) - &(-&y).series_exp(10).unwrap());
        assert_eq!(check.truncate(10).homogeneous_part(2), y);
    }

    #[test]
    fn todd_of_zero_roots_is_one() {
        let vars = y_vars();
        let rs = ChernRootSet::new(&vars, vec![GradedPolynomial::zero(&vars); 3]).unwrap();
        assert_eq!(*todd_class(&rs, 8).value(), GradedPolynomial::one(&vars));
    }

    #[test]
    fn paired_todd_matches_product() {
        let vars = y_vars();
        let y = GradedPolynomial::var(&vars, "y").unwrap();
        let pair = ChernRootSet::new(&vars, vec![y.clone(), -&y]).unwrap();
        let a = ChernRootSet::new(&vars, vec![y.clone()]).unwrap();
        let b = ChernRootSet::new(&vars, vec![-&y]).unwrap();
        let prod = todd_class(&a, 12).value() * todd_class(&b, 12).value();
        let paired = todd_class(&pair, 12);
        assert_eq!(*paired.value(), prod);
        assert_eq!(paired.value().coeff_of(&[("y", 2)]), rat(-1, 12));
        assert!(paired.value().homogeneous_part(2).is_zero());
    }

    #[test]
    fn lambda_t_examples() {
        let vars = y_vars();
        let y = GradedPolynomial::var(&vars, "y").unwrap();
        let rs = ChernRootSet::new(&vars, vec![y.clone()]).unwrap();
        let l = lambda_t_character(&rs, &int(-1), 8);
        let expect = &GradedPolynomial::one(&vars) - &y.series_exp(8).unwrap();
        assert_eq!(*l.value(), expect);
        let f = roots_from_weights(&f_weights(2), &vars).unwrap();
        assert_eq!(
            *lambda_t_character(&f, &int(0), 8).value(),
            GradedPolynomial::one(&vars)
        );
    }

    #[test]
    fn lambda_t_coefficients_are_exterior_characters() {
        let vars = y_vars();
        let f = roots_from_weights(&f_weights(2), &vars).unwrap();
        let coeffs = lambda_t_coefficients(&f, 8);
        assert_eq!(coeffs.len(), 5);
        for (j, c) in coeffs.iter().enumerate() {
            assert_eq!(*c, *chern_character(&f.exterior_power(j), 8).value());
        }
        let t = rat(3, 2);
        let mut combined = GradedPolynomial::zero(&vars);
        let mut tp = int(1);
        for c in &coeffs {
            combined = &combined + &c.scale(&tp);
            tp *= &t;
        }
        assert_eq!(combined, *lambda_t_character(&f, &t, 8).value());
    }

    #[test]
    fn tangent_classes_at_y_zero() {
        for m in 2..=3 {
            let cap = 4 * m as u32;
            let (euler, todd) = tangent_euler_and_todd(m, cap);
            let vars = root_vars(m);
            let mut prod_sq = GradedPolynomial::one(&vars);
            for l in 1..=m {
                let yl = GradedPolynomial::var(&vars, &format!("y{l}")).unwrap();
                prod_sq = &prod_sq * &(&yl * &yl);
            }
            assert_eq!(euler.set_to_zero(&["y"]), prod_sq);
            let f = roots_from_weights(&f_weights(m), &vars).unwrap();
            let td_f = todd_class(&f, cap);
            let sq = (td_f.value() * td_f.value()).truncate(cap);
            assert_eq!(todd.value().set_to_zero(&["y"]), sq);
            assert_eq!(todd.value().constant_term(), int(1));
        }
    }

    #[test]
    fn euler_expansion_m2() {
        let (euler, _) = tangent_euler_and_todd(2, 8);
        let vars = euler.vars().clone();
        let v = |n: &str| GradedPolynomial::var(&vars, n).unwrap();
        let (y, y1, y2) = (v("y"), v("y1"), v("y2"));
        let sq = |p: &GradedPolynomial| p * p;
        let expect = &(&(&sq(&y1) * &sq(&y2)) - &(&sq(&y) * &(&sq(&y1) + &sq(&y2)))) + &sq(&sq(&y));
        assert_eq!(euler, expect);
    }
}
