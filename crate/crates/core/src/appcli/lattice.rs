//! Integer lattices of solutions to congruences, with Hermite normal form and
//! LLL reduction. All arithmetic is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactalg::Rational;

pub type IntRow = Vec<BigInt>;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `rows[i] <- a rows[i] + b rows[j]`, `rows[j] <- c rows[i] + d rows[j]`.
fn combine(
    rows: &mut [IntRow],
    i: usize,
    j: usize,
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    d: &BigInt,
) {
    let (ri, rj) = (rows[i].clone(), rows[j].clone());
    for col in 0..ri.len() {
        rows[i][col] = a * &ri[col] + b * &rj[col];
        rows[j][col] = c * &ri[col] + d * &rj[col];
    }
}

/// Basis (as rows) of `{ a in Z^n : b . a = 0 mod modulus }` for every `b` in
/// `constraints`.
pub fn congruence_lattice(n: usize, constraints: &[IntRow], modulus: &BigInt) -> Vec<IntRow> {
    let mut basis: Vec<IntRow> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    for b in constraints {
        let mut vals: Vec<BigInt> = basis.iter().map(|r| dot(b, r).mod_floor(modulus)).collect();
        // Gather the gcd of the values into row 0 by unimodular operations.
        for i in 1..n {
            if vals[i].is_zero() {
                continue;
            }
            let e = vals[0].extended_gcd(&vals[i]);
            let (u, v) = (vals[0].clone() / &e.gcd, vals[i].clone() / &e.gcd);
            combine(&mut basis, 0, i, &e.x, &e.y, &-&v, &u);
            vals[0] = e.gcd;
            vals[i] = BigInt::zero();
        }
        let scale = modulus / vals[0].gcd(modulus);
        for x in basis[0].iter_mut() {
            *x *= &scale;
        }
    }
    basis
}

/// Row-style Hermite normal form of a full-rank square basis: upper
/// triangular, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`.
pub fn hermite_normal_form(basis: &[IntRow]) -> Vec<IntRow> {
    let mut rows = basis.to_vec();
    let n = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        if r == n {
            break;
        }
        for i in r + 1..n {
            if rows[i][col].is_zero() {
                continue;
            }
            if rows[r][col].is_zero() {
                rows.swap(r, i);
                continue;
            }
            let e = rows[r][col].extended_gcd(&rows[i][col]);
            let u = &rows[r][col] / &e.gcd;
            let v = &rows[i][col] / &e.gcd;
            combine(&mut rows, r, i, &e.x, &e.y, &-&v, &u);
        }
        if rows[r][col].is_zero() {
            continue;
        }
        if rows[r][col].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = rows[i][col].div_floor(&rows[r][col]);
            if !q.is_zero() {
                let pivot_row = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
            }
        }
        r += 1;
    }
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    rows
}

/// Whether `v` is an integer combination of the rows of an HNF basis.
pub fn hnf_contains(hnf: &[IntRow], v: &[BigInt]) -> bool {
    let mut rest = v.to_vec();
    for row in hnf {
        let Some(col) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        let (q, r) = rest[col].div_rem(&row[col]);
        if !r.is_zero() {
            return false;
        }
        for (x, p) in rest.iter_mut().zip(row) {
            *x -= &q * p;
        }
    }
    rest.iter().all(Zero::is_zero)
}

fn rdot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gram_schmidt(rows: &[IntRow]) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>, Vec<Rational>) {
    let n = rows.len();
    let mut star: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut mu = vec![vec![Rational::zero(); n]; n];
    let mut norms = Vec::with_capacity(n);
    for i in 0..n {
        let b: Vec<Rational> = rows[i]
            .iter()
            .map(|x| Rational::from_integer(x.clone()))
            .collect();
        let mut v = b.clone();
        for j in 0..i {
            mu[i][j] = rdot(&b, &star[j]) / &norms[j];
            for (x, s) in v.iter_mut().zip(&star[j]) {
                *x -= &mu[i][j] * s;
            }
        }
        norms.push(rdot(&v, &v));
        star.push(v);
    }
    (star, mu, norms)
}

/// LLL reduction with `delta = 99/100`. The result is normalized so each
/// row's first nonzero entry is positive, then sorted by norm.
pub fn lll_reduce(basis: &[IntRow]) -> Vec<IntRow> {
    let mut b = basis.to_vec();
    let n = b.len();
    let delta = Rational::new(BigInt::from(99), BigInt::from(100));
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (_, mu, _) = gram_schmidt(&b);
            if mu[k][j].abs() > half {
                let q = mu[k][j].round().to_integer();
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
            }
        }
        let (_, mu, norms) = gram_schmidt(&b);
        let lhs = &norms[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    for row in b.iter_mut() {
        if row
            .iter()
            .find(|x| !x.is_zero())
            .is_some_and(|x| x.is_negative())
        {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
    }
    b.sort_by(|x, y| dot(x, x).cmp(&dot(y, y)).then_with(|| x.cmp(y)));
    b
}
