//! Graph polynomials and exact monomial coefficients by capped expansion.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedSub, One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::assignments::SizeProfile;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// `∏ (x_u - x_v)` over the listed pairs, each with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphPolynomial {
    pub nvars: usize,
    pub factors: Vec<(usize, usize)>,
}

pub fn graph_polynomial(g: &Graph) -> GraphPolynomial {
    GraphPolynomial { nvars: g.n(), factors: g.edges().collect() }
}

impl GraphPolynomial {
    pub fn new(nvars: usize, factors: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &factors {
            if u >= v || v >= nvars {
                return Err(Error::Mismatch(format!("bad factor (x{u} - x{v})")));
            }
        }
        Ok(GraphPolynomial { nvars, factors })
    }

    /// Factors rendered as `(x_1 - x_2)` with 1-based indices.
    pub fn display(&self) -> String {
        self.factors.iter().map(|(u, v)| format!("(x_{} - x_{})", u + 1, v + 1)).collect()
    }
}

/// Extra pruning on top of the exponent caps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pruning {
    /// Drop a term only when an exponent exceeds its cap.
    CapsOnly,
    /// Also drop a term when some variable still needs more degree than the
    /// remaining factors containing it can supply.
    Reachable,
}

/// Sparse polynomial whose exponents never exceed per-variable caps.
/// Exponent vectors are packed in mixed radix `caps[i] + 1`.
#[derive(Clone, Debug)]
pub struct CappedPolynomial<C> {
    caps: Vec<u32>,
    stride: Vec<u64>,
    terms: HashMap<u64, C>,
}

/// Signals that a fixed-width coefficient overflowed.
#[derive(Debug)]
struct Overflow;

impl<C> CappedPolynomial<C>
where
    C: Clone + Zero + One + CheckedAdd + CheckedSub,
{
    /// The constant polynomial 1.
    pub fn one(caps: &[u32]) -> Self {
        let mut stride = Vec::with_capacity(caps.len());
        let mut s = 1u64;
        for &c in caps {
            stride.push(s);
            s = s.checked_mul(c as u64 + 1).expect("cap product fits in 64 bits");
        }
        let mut terms = HashMap::new();
        terms.insert(0, C::one());
        CappedPolynomial { caps: caps.to_vec(), stride, terms }
    }

    pub fn nvars(&self) -> usize {
        self.caps.len()
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn exponent(&self, key: u64, i: usize) -> u32 {
        ((key / self.stride[i]) % (self.caps[i] as u64 + 1)) as u32
    }

    pub fn exponents(&self, key: u64) -> Vec<u32> {
        (0..self.nvars()).map(|i| self.exponent(key, i)).collect()
    }

    pub fn key(&self, exps: &[u32]) -> Option<u64> {
        if exps.len() != self.nvars() || exps.iter().zip(&self.caps).any(|(e, c)| e > c) {
            return None;
        }
        Some(exps.iter().zip(&self.stride).map(|(&e, &s)| e as u64 * s).sum())
    }

    pub fn coefficient(&self, exps: &[u32]) -> C {
        self.key(exps).and_then(|k| self.terms.get(&k).cloned()).unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, &C)> + '_ {
        self.terms.iter().map(|(&k, c)| (self.exponents(k), c))
    }

    /// Multiply by `(x_u - x_v)`, discarding terms over the caps and terms
    /// rejected by `keep`.
    fn try_mul_binomial(&mut self, u: usize, v: usize, keep: impl Fn(&Self, u64) -> bool) -> std::result::Result<(), Overflow> {
        let mut next: HashMap<u64, C> = HashMap::with_capacity(self.terms.len() * 2);
        for (&k, c) in &self.terms {
            if self.exponent(k, u) < self.caps[u] {
                let nk = k + self.stride[u];
                if keep(self, nk) {
                    let e = next.entry(nk).or_insert_with(C::zero);
                    *e = e.checked_add(c).ok_or(Overflow)?;
                }
            }
            if self.exponent(k, v) < self.caps[v] {
                let nk = k + self.stride[v];
                if keep(self, nk) {
                    let e = next.entry(nk).or_insert_with(C::zero);
                    *e = e.checked_sub(c).ok_or(Overflow)?;
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        self.terms = next;
        Ok(())
    }

    pub fn mul_binomial(&mut self, u: usize, v: usize) {
        self.try_mul_binomial(u, v, |_, _| true)
            .expect("coefficient overflow; use BigInt coefficients")
    }
}

#[derive(Clone, Debug)]
pub struct CoefficientReport {
    pub coefficient: BigInt,
    /// Largest number of live terms after any factor.
    pub term_peak: usize,
    pub factors: usize,
    pub wall_time_ms: u128,
}

impl CoefficientReport {
    pub fn to_json(&self) -> Value {
        json!({
            "coefficient": self.coefficient.to_i64().map(Value::from).unwrap_or_else(|| json!(self.coefficient.to_string())),
            "term_peak": self.term_peak,
            "factors": self.factors,
            "wall_time_ms": self.wall_time_ms,
        })
    }
}

fn expand<C>(p: &GraphPolynomial, target: &[u32], pruning: Pruning) -> std::result::Result<(C, usize), Overflow>
where
    C: Clone + Zero + One + CheckedAdd + CheckedSub,
{
    let mut poly = CappedPolynomial::<C>::one(target);
    // remaining[i][j]: factors among j.. that contain variable i
    let nf = p.factors.len();
    let mut remaining = vec![vec![0u32; nf + 1]; p.nvars];
    for (j, &(u, v)) in p.factors.iter().enumerate().rev() {
        for (i, r) in remaining.iter_mut().enumerate() {
            r[j] = r[j + 1] + u32::from(i == u || i == v);
        }
    }
    let mut peak = 1;
    for (j, &(u, v)) in p.factors.iter().enumerate() {
        match pruning {
            Pruning::CapsOnly => poly.try_mul_binomial(u, v, |_, _| true)?,
            Pruning::Reachable => poly.try_mul_binomial(u, v, |q, k| {
                [u, v]
                    .iter()
                    .all(|&i| q.caps[i] - q.exponent(k, i) <= remaining[i][j + 1])
            })?,
        }
        peak = peak.max(poly.len());
    }
    let c = poly.coefficient(target);
    debug_assert!(poly.terms().all(|(e, _)| e.iter().sum::<u32>() as usize == nf));
    Ok((c, peak))
}

/// Coefficient of `∏ x_i^target[i]` in the expanded product. Zero whenever
/// `Σ target` differs from the number of factors.
pub fn monomial_coefficient(p: &GraphPolynomial, target: &[u32]) -> Result<CoefficientReport> {
    monomial_coefficient_with(p, target, Pruning::CapsOnly)
}

pub fn monomial_coefficient_with(p: &GraphPolynomial, target: &[u32], pruning: Pruning) -> Result<CoefficientReport> {
    let start = Instant::now();
    if target.len() != p.nvars {
        return Err(Error::Mismatch(format!(
            "target has {} exponents for {} variables",
            target.len(),
            p.nvars
        )));
    }
    let nf = p.factors.len();
    if target.iter().map(|&t| t as usize).sum::<usize>() != nf {
        return Ok(CoefficientReport {
            coefficient: BigInt::zero(),
            term_peak: 0,
            factors: nf,
            wall_time_ms: start.elapsed().as_millis(),
        });
    }
    let (coefficient, term_peak) = match expand::<i128>(p, target, pruning) {
        Ok((c, peak)) => (BigInt::from(c), peak),
        Err(Overflow) => match expand::<BigInt>(p, target, pruning) {
            Ok(r) => r,
            Err(Overflow) => unreachable!("BigInt arithmetic does not overflow"),
        },
    };
    Ok(CoefficientReport { coefficient, term_peak, factors: nf, wall_time_ms: start.elapsed().as_millis() })
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub coefficient: BigInt,
    /// Vertices whose list size is below `target + 1`.
    pub short_lists: Vec<usize>,
    pub term_peak: usize,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        !self.coefficient.is_zero() && self.short_lists.is_empty()
    }
}

/// Nonzero coefficient plus `|L(v_i)| >= t_i + 1` for every `i`.
pub fn certify(g: &Graph, profile: &SizeProfile, target: &[u32]) -> Result<Certificate> {
    if profile.len() != g.n() {
        return Err(Error::Mismatch(format!(
            "profile has {} entries for {} vertices",
            profile.len(),
            g.n()
        )));
    }
    let report = monomial_coefficient(&graph_polynomial(g), target)?;
    let short_lists = profile
        .sizes()
        .iter()
        .zip(target)
        .enumerate()
        .filter(|(_, (&s, &t))| s < t as usize + 1)
        .map(|(i, _)| i)
        .collect();
    Ok(Certificate { coefficient: report.coefficient, short_lists, term_peak: report.term_peak })
}

pub fn certify_choosable(g: &Graph, profile: &SizeProfile, target: &[u32]) -> Result<bool> {
    Ok(certify(g, profile, target)?.holds())
}
