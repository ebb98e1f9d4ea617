//! Exact rational arithmetic and sparse graded polynomials.
//!
//! A [`GradedPolynomial`] lives over a [`VarSet`]: an ordered list of named
//! variables, each carrying a positive even cohomological degree. An optional
//! cap turns the polynomial into a truncated formal power series: every
//! product and sum is cut back to terms of total degree at most the cap.
//!
//! Monomials are dense exponent vectors indexed by position in the owning
//! `VarSet`. The derived ordering on them is lexicographic with the first
//! declared variable most significant; together with the total degree this
//! gives the graded lexicographic order used for division.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Formats a rational as `n` or `n/d`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
    degrees: Vec<u32>,
}

impl VarSet {
    pub fn new<I, S>(vars: I) -> Result<Arc<VarSet>>
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        for (name, degree) in vars {
            let name = name.into();
            if degree == 0 || degree % 2 != 0 {
                return Err(Error::InvalidGrading { name, degree });
            }
            if names.contains(&name) {
                return Err(Error::DuplicateVariable(name));
            }
            names.push(name);
            degrees.push(degree);
        }
        Ok(Arc::new(VarSet { names, degrees }))
    }

    pub fn empty() -> Arc<VarSet> {
        Arc::new(VarSet {
            names: Vec::new(),
            degrees: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn degree_of(&self, name: &str) -> Option<u32> {
        self.index_of(name).map(|i| self.degrees[i])
    }

    /// Variables of `a` followed by the new variables of `b`.
    pub fn union(a: &Arc<VarSet>, b: &Arc<VarSet>) -> Result<Arc<VarSet>> {
        if Arc::ptr_eq(a, b) || a == b {
            return Ok(a.clone());
        }
        let mut out = (**a).clone();
        for (name, &degree) in b.names.iter().zip(&b.degrees) {
            match out.degree_of(name) {
                Some(d) if d != degree => {
                    return Err(Error::GradingMismatch {
                        name: name.clone(),
                        left: d,
                        right: degree,
                    })
                }
                Some(_) => {}
                None => {
                    out.names.push(name.clone());
                    out.degrees.push(degree);
                }
            }
        }
        if out == **a {
            Ok(a.clone())
        } else {
            Ok(Arc::new(out))
        }
    }
}

/// Dense exponent vector relative to a [`VarSet`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Monomial {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self, vars: &VarSet) -> u32 {
        self.0.iter().zip(&vars.degrees).map(|(&e, &d)| e * d).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    /// Sparse view: `(name, exponent)` pairs for the nonzero exponents.
    pub fn named(&self, vars: &VarSet) -> Vec<(String, u32)> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (vars.names[i].clone(), e))
            .collect()
    }

    pub fn display(&self, vars: &VarSet) -> String {
        let parts: Vec<String> = self
            .named(vars)
            .into_iter()
            .map(|(n, e)| if e == 1 { n } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Sparse multivariate polynomial with rational coefficients and a
/// cohomological grading. With a cap it doubles as a truncated series.
///
/// Equality compares the terms only (by variable name) and ignores the cap.
#[derive(Clone, Debug)]
pub struct GradedPolynomial {
    vars: Arc<VarSet>,
    terms: BTreeMap<Monomial, Rational>,
    cap: Option<u32>,
}

fn merge_caps(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl GradedPolynomial {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        GradedPolynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
            cap: None,
        }
    }

    pub fn constant(vars: &Arc<VarSet>, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn var(vars: &Arc<VarSet>, name: &str) -> Result<Self> {
        Self::monomial(vars, &[(name, 1)], Rational::one())
    }

    pub fn monomial(vars: &Arc<VarSet>, exps: &[(&str, u32)], coeff: Rational) -> Result<Self> {
        let mut m = Monomial::one(vars.len());
        for &(name, e) in exps {
            let i = vars
                .index_of(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            m.0[i] += e;
        }
        Ok(Self::from_terms(vars, [(m, coeff)]))
    }

    /// Builds a polynomial from raw terms; like terms are combined and zeros dropped.
    pub fn from_terms<I>(vars: &Arc<VarSet>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(
                m.0.len(),
                vars.len(),
                "monomial length does not match variable set"
            );
            add_term(&mut out, m, c);
        }
        GradedPolynomial {
            vars: vars.clone(),
            terms: out,
            cap: None,
        }
    }

    /// Sets the cap, dropping every term above it. `None` removes the cap.
    pub fn with_cap(mut self, cap: Option<u32>) -> Self {
        self.cap = cap;
        if let Some(c) = cap {
            let vars = self.vars.clone();
            self.terms.retain(|m, _| m.degree(&vars) <= c);
        }
        self
    }

    pub fn truncate(&self, cap: u32) -> Self {
        self.clone().with_cap(Some(cap))
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of a monomial given by variable names.
    pub fn coeff_of(&self, exps: &[(&str, u32)]) -> Rational {
        let mut m = Monomial::one(self.vars.len());
        for &(name, e) in exps {
            match self.vars.index_of(name) {
                Some(i) => m.0[i] += e,
                None if e == 0 => {}
                None => return Rational::zero(),
            }
        }
        self.coeff(&m)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.vars.len()))
    }

    pub fn degree_of(&self, m: &Monomial) -> u32 {
        m.degree(&self.vars)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree(&self.vars)).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree(&self.vars)).min()
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        GradedPolynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree(&self.vars) == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            cap: self.cap,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree(&self.vars));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Terms keyed by sparse `(name, exponent)` lists; independent of variable order.
    pub fn named_terms(&self) -> BTreeMap<Vec<(String, u32)>, Rational> {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut k = m.named(&self.vars);
                k.sort();
                (k, c.clone())
            })
            .collect()
    }

    /// Names of the variables that occur with a nonzero exponent.
    pub fn used_vars(&self) -> Vec<String> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .map(|i| self.vars.names[i].clone())
            .collect()
    }

    /// Re-expresses the polynomial over `target`, which must contain every
    /// variable that occurs here with the same degree.
    pub fn embed(&self, target: &Arc<VarSet>) -> Result<Self> {
        if Arc::ptr_eq(&self.vars, target) || *self.vars == **target {
            let mut p = self.clone();
            p.vars = target.clone();
            return Ok(p);
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names.iter().enumerate() {
            match target.index_of(name) {
                Some(j) => {
                    if target.degrees[j] != self.vars.degrees[i] {
                        return Err(Error::GradingMismatch {
                            name: name.clone(),
                            left: self.vars.degrees[i],
                            right: target.degrees[j],
                        });
                    }
                    map.push(Some(j));
                }
                None => map.push(None),
            }
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut out = Monomial::one(target.len());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => out.0[j] = e,
                    None => return Err(Error::UnknownVariable(self.vars.names[i].clone())),
                }
            }
            terms.insert(out, c.clone());
        }
        Ok(GradedPolynomial {
            vars: target.clone(),
            terms,
            cap: self.cap,
        })
    }

    fn aligned(&self, other: &Self) -> Result<(Self, Self)> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            let mut b = other.clone();
            b.vars = self.vars.clone();
            return Ok((self.clone(), b));
        }
        let vars = VarSet::union(&self.vars, &other.vars)?;
        Ok((self.embed(&vars)?, other.embed(&vars)?))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let (mut a, b) = self.aligned(other)?;
        for (m, c) in b.terms {
            add_term(&mut a.terms, m, c);
        }
        let cap = merge_caps(self.cap, other.cap);
        Ok(a.with_cap(cap))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        let cap = merge_caps(self.cap, other.cap);
        let terms = mul_terms(&a.vars, &a.terms, &b.terms, cap);
        Ok(GradedPolynomial {
            vars: a.vars,
            terms,
            cap,
        })
    }

    fn neg_ref(&self) -> Self {
        GradedPolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            cap: self.cap,
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(&self.vars).with_cap(self.cap);
        }
        GradedPolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
            cap: self.cap,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.vars).with_cap(self.cap);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / den`.
    ///
    /// Without a cap this is classical division by leading terms in graded
    /// lexicographic order. With a cap the dividend is read as a truncated
    /// series: it is cleared degree by degree from the bottom, dividing each
    /// lowest homogeneous piece by the lowest homogeneous part of `den`. The
    /// quotient is then determined up to `cap - deg(den_low)`.
    pub fn exact_divide(&self, den: &Self) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (num, den) = self.aligned(den)?;
        match num.cap {
            None => divide_polynomial(&num, &den),
            Some(cap) => divide_series(&num, &den, cap),
        }
    }

    /// `sum_{n>=0} x^n / n!`, truncated at `cap`.
    pub fn series_exp(&self, cap: u32) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let x = self.truncate(cap);
        let mut acc = Self::one(&self.vars).with_cap(Some(cap));
        let mut power = acc.clone();
        let mut n = 1u32;
        loop {
            power = &power * &x;
            if power.is_zero() {
                break;
            }
            let inv = Rational::new(BigInt::one(), factorial(n));
            acc = &acc + &power.scale(&inv);
            n += 1;
        }
        Ok(acc)
    }

    /// Multiplicative inverse up to `cap`.
    pub fn series_invert(&self, cap: u32) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = c0.recip();
        // s = c0 (1 + w), 1/s = (1/c0) sum (-w)^n
        let s = self.truncate(cap).scale(&inv0);
        let minus_w = &Self::one(&self.vars) - &s;
        let minus_w = minus_w.with_cap(Some(cap));
        let mut acc = Self::one(&self.vars).with_cap(Some(cap));
        let mut power = acc.clone();
        loop {
            power = &power * &minus_w;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc.scale(&inv0))
    }

    /// Substitutes `assignment[name]` for each occurring variable and
    /// truncates at `cap`. Images are embedded into `target`; each must be
    /// zero or homogeneous of the replaced variable's degree.
    pub fn substitute_and_truncate(
        &self,
        assignment: &BTreeMap<String, GradedPolynomial>,
        target: &Arc<VarSet>,
        cap: Option<u32>,
    ) -> Result<Self> {
        let mut images: Vec<Option<GradedPolynomial>> = Vec::with_capacity(self.vars.len());
        for name in self.used_vars() {
            let i = self.vars.index_of(&name).unwrap();
            let img = assignment
                .get(&name)
                .ok_or_else(|| Error::Unassigned(name.clone()))?;
            let degree = self.vars.degrees[i];
            if !img.is_zero() && !(img.is_homogeneous() && img.max_degree() == Some(degree)) {
                return Err(Error::InhomogeneousAssignment { name, degree });
            }
            images.resize(i, None);
            images.push(Some(img.embed(target)?.with_cap(cap)));
        }
        images.resize(self.vars.len(), None);

        let mut powers: Vec<Vec<GradedPolynomial>> = vec![Vec::new(); self.vars.len()];
        let one = Self::one(target).with_cap(cap);
        let mut acc = Self::zero(target).with_cap(cap);
        for (m, c) in &self.terms {
            if let Some(cap) = cap {
                // every image is homogeneous of the variable degree (or zero),
                // so a monomial above the cap can only contribute zero
                if m.degree(&self.vars) > cap {
                    continue;
                }
            }
            let mut term = one.scale(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = images[i].as_ref().expect("used variable has an image");
                let table = &mut powers[i];
                if table.is_empty() {
                    table.push(one.clone());
                }
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * img;
                    table.push(next);
                }
                term = &term * &table[e as usize];
                if term.is_zero() {
                    break;
                }
            }
            for (tm, tc) in term.terms {
                add_term(&mut acc.terms, tm, tc);
            }
        }
        Ok(acc)
    }

    /// Shorthand for substituting zero for the named variables.
    pub fn set_to_zero(&self, names: &[&str]) -> Self {
        let idx: Vec<usize> = names.iter().filter_map(|n| self.vars.index_of(n)).collect();
        GradedPolynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| idx.iter().all(|&i| m.0[i] == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            cap: self.cap,
        }
    }

    /// Leading term in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|(a, _), (b, _)| {
            a.degree(&self.vars)
                .cmp(&b.degree(&self.vars))
                .then_with(|| a.cmp(b))
        })
    }

    pub(crate) fn add_term_mut(&mut self, m: Monomial, c: Rational) {
        add_term(&mut self.terms, m, c);
    }
}

fn add_term(terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn mul_terms(
    vars: &VarSet,
    a: &BTreeMap<Monomial, Rational>,
    b: &BTreeMap<Monomial, Rational>,
    cap: Option<u32>,
) -> BTreeMap<Monomial, Rational> {
    let mut bs: Vec<(u32, &Monomial, &Rational)> =
        b.iter().map(|(m, c)| (m.degree(vars), m, c)).collect();
    bs.sort_by_key(|t| t.0);
    let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(a.len() * bs.len() / 2 + 1);
    for (ma, ca) in a {
        let da = ma.degree(vars);
        for &(db, mb, cb) in &bs {
            if let Some(c) = cap {
                if da + db > c {
                    break;
                }
            }
            let prod = ca * cb;
            acc.entry(ma.mul(mb))
                .and_modify(|v| *v += &prod)
                .or_insert(prod);
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn divide_polynomial(num: &GradedPolynomial, den: &GradedPolynomial) -> Result<GradedPolynomial> {
    let (lm, lc) = den.leading_term().expect("nonzero divisor");
    let (lm, lc) = (lm.clone(), lc.clone());
    let mut rem = num.clone();
    let mut quo = GradedPolynomial::zero(&num.vars);
    while let Some((m, c)) = rem.leading_term() {
        if !lm.divides(m) {
            return Err(Error::NotDivisible {
                degree: m.degree(&num.vars),
            });
        }
        let t = GradedPolynomial::from_terms(&num.vars, [(lm.quotient_of(m), c / &lc)]);
        rem = &rem - &(&t * den);
        quo = &quo + &t;
    }
    Ok(quo)
}

fn divide_homogeneous(rem: &GradedPolynomial, den: &GradedPolynomial) -> Result<GradedPolynomial> {
    // both homogeneous: the lexicographically largest key is the leading term
    let (lm, lc) = den.terms.iter().next_back().expect("nonzero divisor");
    let mut rem = rem.clone().with_cap(None);
    let mut quo = GradedPolynomial::zero(&rem.vars);
    while let Some((m, c)) = rem.terms.iter().next_back() {
        if !lm.divides(m) {
            return Err(Error::NotDivisible {
                degree: m.degree(&rem.vars),
            });
        }
        let t = GradedPolynomial::from_terms(&rem.vars, [(lm.quotient_of(m), c / lc)]);
        rem = &rem - &(&t * den);
        quo.terms.extend(t.terms);
    }
    Ok(quo)
}

fn divide_series(
    num: &GradedPolynomial,
    den: &GradedPolynomial,
    cap: u32,
) -> Result<GradedPolynomial> {
    let low = den.min_degree().expect("nonzero divisor");
    let den_low = den.homogeneous_part(low).with_cap(None);
    let den = den.clone().with_cap(Some(cap));
    let mut rem = num.truncate(cap);
    let mut quo = GradedPolynomial::zero(&num.vars);
    while let Some(d) = rem.min_degree() {
        if d < low {
            return Err(Error::NotDivisible { degree: d });
        }
        let piece = divide_homogeneous(&rem.homogeneous_part(d), &den_low)?;
        rem = &rem - &(&piece * &den);
        debug_assert!(rem.min_degree().is_none_or(|e| e > d));
        for (m, c) in piece.terms {
            add_term(&mut quo.terms, m, c);
        }
    }
    Ok(quo.with_cap(Some(cap - low)))
}

impl PartialEq for GradedPolynomial {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            self.terms == other.terms
        } else {
            self.named_terms() == other.named_terms()
        }
    }
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            a.degree(&self.vars)
                .cmp(&b.degree(&self.vars))
                .then_with(|| b.cmp(a))
        });
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", m.display(&self.vars))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), m.display(&self.vars))?;
            }
        }
        Ok(())
    }
}

impl Add for &GradedPolynomial {
    type Output = GradedPolynomial;
    /// Panics on mismatched gradings; use [`GradedPolynomial::try_add`] to handle that case.
    fn add(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        self.try_add(rhs)
            .expect("grading mismatch in polynomial addition")
    }
}

impl Sub for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn sub(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        self.try_sub(rhs)
            .expect("grading mismatch in polynomial subtraction")
    }
}

impl Mul for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn mul(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        self.try_mul(rhs)
            .expect("grading mismatch in polynomial multiplication")
    }
}

impl Neg for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn neg(self) -> GradedPolynomial {
        self.neg_ref()
    }
}

impl Neg for GradedPolynomial {
    type Output = GradedPolynomial;
    fn neg(self) -> GradedPolynomial {
        self.neg_ref()
    }
}
