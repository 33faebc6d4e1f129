//! Truncated characters of integrable highest weight modules by Freudenthal's
//! recursion, and outer multiplicities of tensor products by peeling off
//! highest weights.
//!
//! Finite parts are handled in integer ε-coordinates `x ∈ Z^{n+1}` modulo the
//! all-ones vector, with `λ(h_i) = x_i - x_{i+1}`. All pairings are scaled by
//! `n+1` so the recursion stays in integers.

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::affine_cartan::{AffineWeight, FiniteWeight};
use crate::{Error, Rational, Result};

type Key = (Vec<i64>, u32);

fn to_eps(mu: &FiniteWeight) -> Vec<i64> {
    let n = mu.rank();
    let mut x = vec![0; n + 1];
    for i in (0..n).rev() {
        x[i] = x[i + 1] + mu.at(i + 1);
    }
    x
}

fn from_eps(x: &[i64]) -> FiniteWeight {
    FiniteWeight::new(x.windows(2).map(|w| w[0] - w[1]).collect()).expect("rank is positive")
}

/// Sorts into the dominant chamber and normalises the last entry to zero.
fn dominant_key(x: &[i64]) -> Vec<i64> {
    let mut y = x.to_vec();
    y.sort_unstable_by(|a, b| b.cmp(a));
    let last = *y.last().expect("non-empty");
    y.iter_mut().for_each(|v| *v -= last);
    y
}

/// `(n+1)(x, y)` for the finite parts.
fn pair_scaled(x: &[i64], y: &[i64]) -> i64 {
    let np1 = x.len() as i64;
    let dot: i64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    np1 * dot - x.iter().sum::<i64>() * y.iter().sum::<i64>()
}

fn rho_eps(np1: usize) -> Vec<i64> {
    (0..np1).rev().map(|v| v as i64).collect()
}

/// Whether `x_top - x + d·θ` lies in the positive root cone, i.e. whether
/// the weight `(x, d)` is below the top.
fn below(top: &[i64], x: &[i64], depth: u32) -> bool {
    let np1 = top.len();
    let mut y: Vec<i64> = top.iter().zip(x).map(|(a, b)| a - b).collect();
    y[0] += depth as i64;
    y[np1 - 1] -= depth as i64;
    let t: i64 = y.iter().sum();
    if t % np1 as i64 != 0 {
        return false;
    }
    let mut s = 0;
    for (i, v) in y.iter().enumerate().take(np1 - 1) {
        s += v;
        if (np1 as i64) * s - (i as i64 + 1) * t < 0 {
            return false;
        }
    }
    true
}

/// Decreasing `x` with last entry zero and `(n+1)|x|^2 ≤ bound`.
fn dominant_eps_below(np1: usize, bound: i64) -> Vec<Vec<i64>> {
    fn rec(pos: usize, x: &mut Vec<i64>, bound: i64, out: &mut Vec<Vec<i64>>) {
        let np1 = x.len();
        if pos + 1 == np1 {
            x[pos] = 0;
            if pair_scaled(x, x) <= bound {
                out.push(x.clone());
            }
            return;
        }
        let hi = if pos == 0 { (bound as f64).sqrt() as i64 + 1 } else { x[pos - 1] };
        for v in 0..=hi {
            // (n+1)|x|^2 ≥ (x_1 - x_{n+1})^2
            if pos == 0 && v * v > bound {
                break;
            }
            x[pos] = v;
            rec(pos + 1, x, bound, out);
        }
    }
    let mut out = Vec::new();
    rec(0, &mut vec![0; np1], bound, &mut out);
    out
}

/// Distinct permutations of a multiset, for expanding Weyl orbits.
fn permutations(x: &[i64]) -> Vec<Vec<i64>> {
    let mut v = x.to_vec();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    loop {
        let Some(i) = (0..v.len().saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else {
            return out;
        };
        let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("exists");
        v.swap(i, j);
        v[i + 1..].reverse();
        out.push(v.clone());
    }
}

/// The multiplicities of `V(Λ)` at every weight `Λ - Σ k_l α_l` with
/// `k_0 ≤ depth`, stored on finite-dominant representatives.
#[derive(Clone, Debug)]
pub struct TruncatedCharacter {
    top: AffineWeight,
    depth: u32,
    mults: HashMap<Key, u64>,
}

impl TruncatedCharacter {
    pub fn top(&self) -> &AffineWeight {
        &self.top
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    fn lookup(&self, x: &[i64], d: u32) -> u64 {
        if d > self.depth {
            return 0;
        }
        self.mults.get(&(dominant_key(x), d)).copied().unwrap_or(0)
    }

    /// `dim V(Λ)_λ`; zero beyond the truncation depth.
    pub fn multiplicity(&self, lam: &AffineWeight) -> Result<u64> {
        if lam.rank() != self.top.rank() {
            return Err(Error::RankMismatch { expected: self.top.rank(), got: lam.rank() });
        }
        if lam.level != self.top.level {
            return Ok(0);
        }
        let d = self.top.degree - lam.degree;
        if !d.is_integer() || d < Rational::zero() {
            return Ok(0);
        }
        match u32::try_from(d.to_integer()) {
            Ok(d) => Ok(self.lookup(&to_eps(&lam.finite), d)),
            Err(_) => Ok(0),
        }
    }

    /// `dim V(Λ)_{λ - dδ}` for `d = 0..=depth`.
    pub fn string(&self, lam: &AffineWeight) -> Result<Vec<u64>> {
        (0..=self.depth)
            .map(|d| self.multiplicity(&lam.shift_degree(Rational::from_integer(-(d as i64)))))
            .collect()
    }

    /// Finite-dominant weights with non-zero multiplicity, by depth.
    pub fn dominant_weights(&self) -> Vec<(AffineWeight, u64)> {
        let mut out: Vec<(AffineWeight, u64, u32, Vec<i64>)> = self
            .mults
            .iter()
            .filter(|(_, &m)| m > 0)
            .map(|((x, d), &m)| {
                let w = AffineWeight::new(from_eps(x), self.top.level, self.top.degree - *d as i64);
                (w, m, *d, x.clone())
            })
            .collect();
        out.sort_by(|a, b| a.2.cmp(&b.2).then_with(|| b.3.cmp(&a.3)));
        out.into_iter().map(|(w, m, _, _)| (w, m)).collect()
    }

    /// Every weight, not only the dominant ones, as `(ε-coordinates, depth,
    /// multiplicity)`.
    fn all_weights(&self) -> Vec<(Vec<i64>, u32, u64)> {
        let mut out = Vec::new();
        for ((x, d), &m) in &self.mults {
            if m == 0 {
                continue;
            }
            for p in permutations(x) {
                out.push((p, *d, m));
            }
        }
        out
    }
}

/// Candidate finite-dominant weights of a level-`ℓ` module `V(Λ)` at each
/// depth, ordered so every weight comes after all weights above it.
fn candidates(top_eps: &[i64], level: i64, depth: u32) -> Vec<(Vec<i64>, u32)> {
    let np1 = top_eps.len();
    let top_norm = pair_scaled(top_eps, top_eps);
    let rho = rho_eps(np1);
    let mut out = Vec::new();
    for d in 0..=depth {
        let bound = top_norm + 2 * level * d as i64 * np1 as i64;
        let mut layer: Vec<(i64, Vec<i64>)> = dominant_eps_below(np1, bound)
            .into_iter()
            .filter(|x| below(top_eps, x, d))
            .map(|x| {
                let xr: Vec<i64> = x.iter().zip(&rho).map(|(a, b)| a + b).collect();
                (pair_scaled(&xr, &xr), x)
            })
            .collect();
        layer.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| b.1.cmp(&a.1)));
        out.extend(layer.into_iter().map(|(_, x)| (x, d)));
    }
    out
}

/// `ch V(Λ)` down to the given depth below `Λ`.
pub fn freudenthal_character(lam: &AffineWeight, depth: u32) -> Result<TruncatedCharacter> {
    if lam.level <= 0 {
        return Err(Error::NonPositiveLevel(lam.level));
    }
    if !lam.is_dominant() {
        return Err(Error::NotDominant(lam.to_string()));
    }
    let n = lam.rank();
    let np1 = n + 1;
    let level = lam.level;
    let top_eps = dominant_key(&to_eps(&lam.finite));
    let rho = rho_eps(np1);
    let h = level + np1 as i64;
    let plus_rho = |x: &[i64]| -> Vec<i64> { x.iter().zip(&rho).map(|(a, b)| a + b).collect() };
    let top_rho = plus_rho(&top_eps);
    let top_norm = pair_scaled(&top_rho, &top_rho);

    let mut chr = TruncatedCharacter { top: lam.clone(), depth, mults: HashMap::new() };
    let norm_bound = |d: u32| pair_scaled(&top_eps, &top_eps) + 2 * level * d as i64 * np1 as i64;

    for (x, d) in candidates(&top_eps, level, depth) {
        if d == 0 && x == top_eps {
            chr.mults.insert((x, d), 1);
            continue;
        }
        let xr = plus_rho(&x);
        let lhs = top_norm - pair_scaled(&xr, &xr) + 2 * h * d as i64 * np1 as i64;
        let mut rhs: i64 = 0;
        for a in 0..np1 {
            for b in 0..np1 {
                if a == b {
                    continue;
                }
                // β = e_a - e_b; r = 0 needs β positive
                let r_min = if a < b { 0 } else { 1 };
                let mut beta = vec![0; np1];
                beta[a] = 1;
                beta[b] = -1;
                let beta_sq = pair_scaled(&beta, &beta);
                let x_beta = pair_scaled(&x, &beta);
                for r in r_min..=d {
                    let mut j = 1u32;
                    while let Some(dd) = d.checked_sub(j * r) {
                        let mut y = x.clone();
                        y[a] += j as i64;
                        y[b] -= j as i64;
                        // convex in j and non-positive at j = 0
                        if pair_scaled(&y, &y) > norm_bound(dd) {
                            break;
                        }
                        let m = chr.lookup(&y, dd) as i64;
                        if m != 0 {
                            let pairing = x_beta + j as i64 * beta_sq + np1 as i64 * level * r as i64;
                            rhs += pairing * m;
                        }
                        j += 1;
                    }
                }
            }
        }
        // imaginary roots rδ of multiplicity n
        for r in 1..=d {
            let mut j = 1;
            while j * r <= d {
                let m = chr.lookup(&x, d - j * r) as i64;
                rhs += n as i64 * np1 as i64 * level * r as i64 * m;
                j += 1;
            }
        }
        let rhs = 2 * rhs;
        if lhs <= 0 || rhs % lhs != 0 || rhs < 0 {
            return Err(Error::NonIntegralMultiplicity(format!(
                "{} at depth {d}: {rhs}/{lhs}",
                from_eps(&x)
            )));
        }
        let m = (rhs / lhs) as u64;
        if m > 0 {
            chr.mults.insert((x, d), m);
        }
    }
    Ok(chr)
}

/// Outer multiplicities `[V(Λ) ⊗ V(Λ') : V(ξ)]` for every `ξ` within the
/// given depth of `Λ + Λ'`.
#[derive(Clone, Debug, Serialize)]
pub struct TensorDecomposition {
    pub top: AffineWeight,
    pub depth: u32,
    pub components: Vec<(AffineWeight, u64)>,
}

impl TensorDecomposition {
    /// The multiplicity of `V(ξ)`; zero when absent or beyond the depth.
    pub fn multiplicity(&self, xi: &AffineWeight) -> u64 {
        self.components.iter().find(|(w, _)| w == xi).map(|c| c.1).unwrap_or(0)
    }
}

/// Peels highest weights off the truncated product character. Every
/// finite-dominant weight of the product is checked against the sum of the
/// characters found, so a successful return means the reconstruction is
/// exact within the depth.
pub fn tensor_outer_multiplicities(a: &AffineWeight, b: &AffineWeight, depth: u32) -> Result<TensorDecomposition> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch { expected: a.rank(), got: b.rank() });
    }
    let ca = freudenthal_character(a, depth)?;
    let cb = freudenthal_character(b, depth)?;
    let top = a.add(b)?;
    let level = top.level;
    let np1 = top.rank() + 1;
    let top_eps = dominant_key(&to_eps(&top.finite));
    let weights_a = ca.all_weights();
    let mut components: Vec<(AffineWeight, u64, TruncatedCharacter, u32)> = Vec::new();
    for (x, d) in candidates(&top_eps, level, depth) {
        let mut product: u64 = 0;
        for (wa, da, ma) in &weights_a {
            if *da > d {
                continue;
            }
            let wb: Vec<i64> = x.iter().zip(wa).map(|(t, s)| t - s).collect();
            product += ma * cb.lookup(&wb, d - da);
        }
        let mut found: u64 = 0;
        for (_, c, chr, dxi) in &components {
            if *dxi <= d {
                found += c * chr.lookup(&x, d - dxi);
            }
        }
        if found > product {
            return Err(Error::NonIntegralMultiplicity(format!(
                "negative residual at {} depth {d}",
                from_eps(&x)
            )));
        }
        let residual = product - found;
        if residual == 0 {
            continue;
        }
        let fin = from_eps(&x);
        let h0 = level - (x[0] - x[np1 - 1]);
        let xi = AffineWeight::new(fin, level, top.degree - d as i64);
        if h0 < 0 {
            return Err(Error::NonIntegralMultiplicity(format!(
                "residual {residual} at non-dominant {xi}"
            )));
        }
        let chr = freudenthal_character(&xi, depth - d)?;
        components.push((xi, residual, chr, d));
    }
    Ok(TensorDecomposition {
        top,
        depth,
        components: components.into_iter().map(|(w, c, _, _)| (w, c)).collect(),
    })
}
