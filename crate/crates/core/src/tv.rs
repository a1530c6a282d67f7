//! Tsfasman–Vladut bounds: the basic-inequality budget, the greedy fill
//! over prime norms, `B(L/K)` and the assembled mean-exponent bounds.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::arith::PrimePower;
use crate::error::{Error, Result};
use crate::fields::{disc_with_tame_conductor, FactoredInt, FieldDescriptor};
use crate::towers::PlaceSet;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `a_0 = log 2√(2π) + π/4 + γ/2`
pub fn a0() -> f64 {
    (2.0 * (2.0 * PI).sqrt()).ln() + PI / 4.0 + EULER_GAMMA / 2.0
}

/// `a_1 = log 8π + γ`
pub fn a1() -> f64 {
    (8.0 * PI).ln() + EULER_GAMMA
}

pub fn b0() -> f64 {
    std::f64::consts::LN_2
}

pub fn b1() -> f64 {
    (2.0 * PI).ln()
}

/// `a_q = log q / (√q − 1)`
pub fn a_q(q: f64) -> f64 {
    q.ln() / (q.sqrt() - 1.0)
}

/// `b_q = log(q / (q − 1))`
pub fn b_q(q: f64) -> f64 {
    (q / (q - 1.0)).ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedPhi {
    pub q: PrimePower,
    pub x: f64,
}

/// Replaces the minimal admissible norm of a prime and its ε deduction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapacityOverride {
    pub ell: u64,
    pub norm: PrimePower,
    pub epsilon: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TVProblem {
    pub x0: f64,
    pub x1: f64,
    pub fixed: Vec<FixedPhi>,
    pub capacity_overrides: Vec<CapacityOverride>,
    /// Norms forced to `x = 0`.
    pub excluded: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub q: PrimePower,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TVSolution {
    pub ell_star_0: PrimePower,
    pub alpha: f64,
    pub budget: f64,
    /// Budget left once the prefix is paid, `α · w · a(ℓ*₀)`.
    pub remainder: f64,
    pub sum_b_fixed: f64,
    pub sum_b_bound: f64,
    pub b_upper: f64,
    pub prefix: Vec<Candidate>,
    pub ell_star_0_weight: f64,
}

impl TVProblem {
    pub fn capacity(&self) -> f64 {
        self.x0 + 2.0 * self.x1
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x0 >= 0.0 && self.x1 >= 0.0) {
            return Err(Error::Domain(format!("x0 = {}, x1 = {}", self.x0, self.x1)));
        }
        let mut usage: BTreeMap<u64, f64> = BTreeMap::new();
        for f in &self.fixed {
            if !(f.x >= 0.0) {
                return Err(Error::Domain(format!("x_{} = {}", f.q.value, f.x)));
            }
            *usage.entry(f.q.ell).or_insert(0.0) += f.q.m as f64 * f.x;
        }
        let cap = self.capacity();
        for (ell, used) in usage {
            if used > cap * (1.0 + 1e-12) + 1e-15 {
                return Err(Error::InconsistentParameters(format!(
                    "fixed usage {used} at {ell} exceeds x0 + 2x1 = {cap}"
                )));
            }
        }
        Ok(())
    }

    pub fn fixed_primes(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.fixed.iter().map(|f| f.q.ell).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// `1 − a0·x0 − a1·x1 − Σ_fixed a(q)·x_q`
pub fn budget(problem: &TVProblem) -> Result<f64> {
    problem.validate()?;
    let fixed: f64 = problem.fixed.iter().map(|f| a_q(f.q.value as f64) * f.x).sum();
    let b = 1.0 - a0() * problem.x0 - a1() * problem.x1 - fixed;
    if b < 0.0 {
        return Err(Error::Infeasible { budget: b });
    }
    Ok(b)
}

/// Greedy fill over candidates in ascending norm order.
pub fn optimize(problem: &TVProblem, candidates: &[Candidate]) -> Result<TVSolution> {
    let total = budget(problem)?;
    for w in candidates.windows(2) {
        if w[0].q.value > w[1].q.value {
            return Err(Error::Domain("candidates must be sorted by norm".into()));
        }
    }
    let sum_b_fixed: f64 = problem.fixed.iter().map(|f| b_q(f.q.value as f64) * f.x).sum();
    let mut remaining = total;
    let mut sum_b = sum_b_fixed;
    let mut prefix = Vec::new();
    let mut last_bound = 0;
    for c in candidates {
        if !(c.weight >= 0.0) {
            return Err(Error::Domain(format!("negative weight at {}", c.q.value)));
        }
        last_bound = c.q.value;
        let q = c.q.value as f64;
        let cost = c.weight * a_q(q);
        if cost > remaining {
            let alpha = remaining / cost;
            sum_b += alpha * c.weight * b_q(q);
            return Ok(TVSolution {
                ell_star_0: c.q,
                alpha,
                budget: total,
                remainder: remaining,
                sum_b_fixed,
                sum_b_bound: sum_b,
                b_upper: b_upper(problem, sum_b),
                prefix,
                ell_star_0_weight: c.weight,
            });
        }
        remaining -= cost;
        sum_b += c.weight * b_q(q);
        prefix.push(*c);
    }
    Err(Error::NeedsLargerEnumeration {
        bound: last_bound,
        remaining,
    })
}

fn b_upper(problem: &TVProblem, sum_b: f64) -> f64 {
    1.0 + sum_b - problem.x0 * b0() - problem.x1 * b1()
}

/// Candidate list for `field`: each prime not carrying fixed data enters at
/// its smallest norm with weight `(x0 + 2x1 − ε)/m`, where by default
/// `ε = x0 + 2x1 − m·count/g`. A prime whose entry norm is excluded drops out,
/// and only norms up to `bound` are listed.
pub fn candidates_from_field(
    field: &FieldDescriptor,
    problem: &TVProblem,
    g: f64,
    bound: u64,
) -> Result<Vec<Candidate>> {
    let fixed = problem.fixed_primes();
    let cap = problem.capacity();
    let mut out = Vec::new();
    for (q, count) in field.enumerate_norms(bound)? {
        if fixed.binary_search(&q.ell).is_ok() {
            continue;
        }
        let (norm, eps) = match problem.capacity_overrides.iter().find(|o| o.ell == q.ell) {
            Some(o) => (o.norm, o.epsilon),
            None => (q, cap - q.m as f64 * count as f64 / g),
        };
        // past the bound the list would skip split primes of smaller norm
        if norm.value > bound || problem.excluded.contains(&norm.value) {
            continue;
        }
        let weight = ((cap - eps) / norm.m as f64).max(0.0);
        out.push(Candidate { q: norm, weight });
    }
    out.sort_by_key(|c| c.q.value);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BMode {
    Grh,
    GrhTotallyImaginary,
    Unconditional,
}

pub fn universal_b(mode: BMode) -> f64 {
    match mode {
        BMode::Grh => 1.0939,
        BMode::GrhTotallyImaginary => 1.0765,
        BMode::Unconditional => 1.1589,
    }
}

/// Zimmert's lower bound on `liminf log Reg / g`.
pub fn zimmert_lower(x0: f64, x1: f64) -> f64 {
    ((PI * std::f64::consts::E).sqrt().ln() + EULER_GAMMA / 2.0) * x0
        + (std::f64::consts::LN_2 + EULER_GAMMA) * x1
}

/// `α(A, K, S)` from `log √disc(K,S)` and a signature.
pub fn alpha_from_parts(a: f64, log_sqrt_disc: f64, r1: f64, r2: f64) -> f64 {
    a * log_sqrt_disc
        - r1 / 2.0 * (EULER_GAMMA + 1.0 + PI.ln())
        - r2 * (EULER_GAMMA + std::f64::consts::LN_2)
}

pub fn alpha_constant(a: f64, field: &FieldDescriptor, s: &PlaceSet, p: u64) -> Result<f64> {
    let disc = disc_with_tame_conductor(field, s, p)?;
    Ok(alpha_from_parts(a, 0.5 * disc.ln_abs(), field.r1 as f64, field.r2 as f64))
}

/// `(1/ε)(α/log p + a(Σ))`
pub fn mean_exponent_upper(epsilon: f64, p: u64, alpha_value: f64, a_sigma: f64) -> Result<f64> {
    if !(epsilon > 0.0) {
        return Err(Error::Domain(format!("epsilon = {epsilon} must be positive")));
    }
    Ok((alpha_value / (p as f64).ln() + a_sigma) / epsilon)
}

/// `(C0/t0) log_p |disc K|`
pub fn propmain_upper(c0: Option<f64>, t0: i64, p: u64, abs_disc: &FactoredInt) -> Result<f64> {
    let c0 = c0.ok_or(Error::MissingParameter("C0"))?;
    if t0 <= 0 {
        return Err(Error::Domain(format!("t0 = {t0} must be positive")));
    }
    if !(c0 > 0.0) {
        return Err(Error::Domain(format!("C0 = {c0} must be positive")));
    }
    Ok(c0 / t0 as f64 * abs_disc.log_base(p))
}

/// Level-n bound `([K_n:K]/d_n)(log_p √disc(K,S) · log(h_n)/g_n + a(Σ))`.
/// Returns 0 when `d_n = 0` (trivial p-class group).
pub fn per_level_bound(
    index: u64,
    d_n: u64,
    field: &FieldDescriptor,
    s: &PlaceSet,
    a_sigma: f64,
    ratio_h_over_g: f64,
    p: u64,
) -> Result<f64> {
    if d_n == 0 {
        return Ok(0.0);
    }
    if !(ratio_h_over_g >= 0.0) {
        return Err(Error::Domain(format!("ratio {ratio_h_over_g} must be >= 0")));
    }
    let disc = disc_with_tame_conductor(field, s, p)?;
    let log_p_sqrt = 0.5 * disc.log_base(p);
    Ok(index as f64 / d_n as f64 * (log_p_sqrt * ratio_h_over_g + a_sigma))
}
