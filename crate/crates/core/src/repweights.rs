//! Weight systems of the modules entering the complexes `D_k`.
//!
//! `sl(n)` weights are integer vectors in the coordinates `z_1..z_n`, taken
//! modulo `z_1 + .. + z_n`. Every weight of an irreducible module differs from
//! the highest weight by a sum of roots, so all of them keep the coordinate
//! sum of the highest weight and no fractional representatives are needed.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoordSystem {
    /// `z_1..z_n` for `sl(n)`.
    SlZ(usize),
    /// `x_1..x_m` for `Sp(m)`.
    SpX(usize),
    /// The single coordinate `x` of `Sp(1)`.
    Sp1,
}

impl CoordSystem {
    pub fn coord_count(self) -> usize {
        match self {
            CoordSystem::SlZ(n) => n,
            CoordSystem::SpX(m) => m,
            CoordSystem::Sp1 => 1,
        }
    }

    fn letter(self) -> &'static str {
        match self {
            CoordSystem::SlZ(_) => "z",
            CoordSystem::SpX(_) | CoordSystem::Sp1 => "x",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    system: CoordSystem,
    coords: Vec<i64>,
}

impl Weight {
    pub fn new(system: CoordSystem, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != system.coord_count() {
            return Err(Error::CoordinateMismatch(format!(
                "{:?} expects {} coordinates, got {}",
                system,
                system.coord_count(),
                coords.len()
            )));
        }
        Ok(Weight { system, coords })
    }

    pub fn zero(system: CoordSystem) -> Self {
        Weight {
            system,
            coords: vec![0; system.coord_count()],
        }
    }

    pub fn system(&self) -> CoordSystem {
        self.system
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_dominant(&self) -> bool {
        match self.system {
            CoordSystem::SlZ(_) => self.coords.windows(2).all(|w| w[0] >= w[1]),
            _ => true,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = self.system.letter();
        let mut first = true;
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let name = if self.system == CoordSystem::Sp1 {
                letter.to_string()
            } else {
                format!("{letter}{}", i + 1)
            };
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let abs = c.unsigned_abs();
            if abs == 1 {
                write!(f, "{sign}{name}")?;
            } else {
                write!(f, "{sign}{abs}{name}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Multiset of weights in a single coordinate system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    system: CoordSystem,
    entries: BTreeMap<Vec<i64>, u64>,
}

impl WeightSystem {
    pub fn new(system: CoordSystem) -> Self {
        WeightSystem {
            system,
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, w: &Weight, mult: u64) -> Result<()> {
        if w.system != self.system {
            return Err(Error::CoordinateMismatch(format!(
                "weight in {:?} added to a {:?} system",
                w.system, self.system
            )));
        }
        if mult > 0 {
            *self.entries.entry(w.coords.clone()).or_insert(0) += mult;
        }
        Ok(())
    }

    pub fn system(&self) -> CoordSystem {
        self.system
    }

    /// Representation dimension: the sum of multiplicities.
    pub fn dimension(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn multiplicity(&self, coords: &[i64]) -> u64 {
        self.entries.get(coords).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (Weight, u64)> + '_ {
        self.entries.iter().map(move |(c, &m)| {
            (
                Weight {
                    system: self.system,
                    coords: c.clone(),
                },
                m,
            )
        })
    }

    /// Image under a coordinate permutation; `perm[i]` is the new position of coordinate `i`.
    pub fn permuted(&self, perm: &[usize]) -> WeightSystem {
        let mut out = WeightSystem::new(self.system);
        for (c, &m) in &self.entries {
            let mut img = vec![0; c.len()];
            for (i, &v) in c.iter().enumerate() {
                img[perm[i]] = v;
            }
            *out.entries.entry(img).or_insert(0) += m;
        }
        out
    }
}

/// The `Sp(1)` factor of `W_k^j` together with its `Sp(m)` factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePair {
    pub e_factor: WeightSystem,
    pub f_factor: WeightSystem,
}

/// Weights `k1 - k2` with `k1 + k2 = n` of `S^n E`.
pub fn sp1_symmetric_power_weights(n: i64) -> Result<WeightSystem> {
    if n < 0 {
        return Err(Error::InvalidInput(format!("negative symmetric power {n}")));
    }
    let mut ws = WeightSystem::new(CoordSystem::Sp1);
    for k1 in 0..=n {
        ws.insert(&Weight::new(CoordSystem::Sp1, vec![2 * k1 - n])?, 1)?;
    }
    Ok(ws)
}

/// Highest weight `z_1 + .. + z_j - k z_{2m}` of `(Λ^j F ⊗ S^k F*)_0`.
pub fn cartan_component_highest_weight(j: usize, k: usize, m: usize) -> Result<Weight> {
    let n = 2 * m;
    if j >= n {
        return Err(Error::IndexOutOfRange { k: j, n: n - 1 });
    }
    let mut coords = vec![0i64; n];
    for c in coords.iter_mut().take(j) {
        *c += 1;
    }
    coords[n - 1] -= k as i64;
    Weight::new(CoordSystem::SlZ(n), coords)
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Full weight system of the irreducible `sl(n)` module with the given
/// dominant highest weight, via Freudenthal's multiplicity recursion.
///
/// Weights are generated level by level (number of simple roots subtracted
/// from the highest weight). With `rho = (n-1, .., 0)` and the standard inner
/// product on `Z^n` every quantity stays integral.
pub fn freudenthal_weights(highest: &Weight) -> Result<WeightSystem> {
    let CoordSystem::SlZ(n) = highest.system else {
        return Err(Error::CoordinateMismatch(
            "Freudenthal recursion needs sl(n) z-coordinates".into(),
        ));
    };
    if !highest.is_dominant() {
        return Err(Error::NotDominant(highest.to_string()));
    }
    let rho: Vec<i64> = (0..n).map(|i| (n - 1 - i) as i64).collect();
    let shifted = |w: &[i64]| -> Vec<i64> { w.iter().zip(&rho).map(|(a, b)| a + b).collect() };
    let top = shifted(&highest.coords);
    let top_norm = dot(&top, &top);

    let positive_roots: Vec<Vec<i64>> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .map(|(a, b)| {
            let mut r = vec![0; n];
            r[a] = 1;
            r[b] = -1;
            r
        })
        .collect();

    let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
    mult.insert(highest.coords.clone(), 1);
    let mut level = vec![highest.coords.clone()];
    while !level.is_empty() {
        let mut candidates: Vec<Vec<i64>> = level
            .iter()
            .flat_map(|w| {
                (0..n.saturating_sub(1)).map(move |i| {
                    let mut c = w.clone();
                    c[i] -= 1;
                    c[i + 1] += 1;
                    c
                })
            })
            .collect();
        candidates.sort();
        candidates.dedup();
        let mut next = Vec::new();
        for mu in candidates {
            let s = shifted(&mu);
            let denom = top_norm - dot(&s, &s);
            if denom <= 0 {
                continue;
            }
            let mut num: i64 = 0;
            for alpha in &positive_roots {
                let mut w = mu.clone();
                loop {
                    for (x, a) in w.iter_mut().zip(alpha) {
                        *x += a;
                    }
                    match mult.get(&w) {
                        Some(&m) => num += dot(&w, alpha) * m as i64,
                        None => break,
                    }
                }
            }
            let num = 2 * num;
            debug_assert_eq!(num % denom, 0, "Freudenthal quotient must be integral");
            let m = num / denom;
            if m > 0 {
                mult.insert(mu.clone(), m as u64);
                next.push(mu);
            }
        }
        level = next;
    }

    let mut ws = WeightSystem::new(highest.system);
    for (coords, m) in mult {
        ws.entries.insert(coords, m);
    }
    Ok(ws)
}

/// Weyl dimension formula for `sl(n)`: `prod_{a<b} (l_a - l_b + b - a) / (b - a)`.
pub fn weyl_dimension(highest: &Weight) -> Result<u64> {
    let CoordSystem::SlZ(n) = highest.system else {
        return Err(Error::CoordinateMismatch(
            "Weyl dimension formula needs sl(n) z-coordinates".into(),
        ));
    };
    if !highest.is_dominant() {
        return Err(Error::NotDominant(highest.to_string()));
    }
    let l = &highest.coords;
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for a in 0..n {
        for b in a + 1..n {
            num *= l[a] - l[b] + (b - a) as i64;
            den *= (b - a) as i64;
        }
    }
    let q = num / den;
    q.to_u64()
        .ok_or_else(|| Error::InvalidInput("dimension does not fit in 64 bits".into()))
}

/// Restricts an `sl(2m)` weight system to `Sp(m)`, mapping the coordinate
/// pair `(z_{2l-1}, z_{2l})` to `(x_l, -x_l)`.
pub fn restrict_su_to_sp(ws: &WeightSystem) -> Result<WeightSystem> {
    let CoordSystem::SlZ(n) = ws.system else {
        return Err(Error::CoordinateMismatch(
            "restriction needs z-coordinates".into(),
        ));
    };
    if n % 2 != 0 {
        return Err(Error::CoordinateMismatch(format!(
            "sl({n}) does not restrict to a symplectic subalgebra"
        )));
    }
    let m = n / 2;
    let mut out = WeightSystem::new(CoordSystem::SpX(m));
    for (z, &mult) in &ws.entries {
        let x: Vec<i64> = (0..m).map(|l| z[2 * l] - z[2 * l + 1]).collect();
        *out.entries.entry(x).or_insert(0) += mult;
    }
    Ok(out)
}

/// Weight data of `W_k^j` for `0 <= j <= 2m`.
pub fn build_module_pair(m: usize, k: usize, j: usize) -> Result<ModulePair> {
    if m < 1 {
        return Err(Error::InvalidInput("m must be positive".into()));
    }
    if j > 2 * m {
        return Err(Error::IndexOutOfRange { k: j, n: 2 * m });
    }
    if j == 2 * m {
        let mut f = WeightSystem::new(CoordSystem::SpX(m));
        f.insert(&Weight::zero(CoordSystem::SpX(m)), 1)?;
        return Ok(ModulePair {
            e_factor: sp1_symmetric_power_weights(2 * (m + k) as i64)?,
            f_factor: f,
        });
    }
    let highest = cartan_component_highest_weight(j, k, m)?;
    Ok(ModulePair {
        e_factor: sp1_symmetric_power_weights((j + k) as i64)?,
        f_factor: restrict_su_to_sp(&freudenthal_weights(&highest)?)?,
    })
}
