//! Finite abelian p-groups and their mean exponent, plus the asymptotic
//! behaviour of mean exponents along a Z_p-extension.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// `Z/p^{a_1} × … × Z/p^{a_d}` with `a_1 ≥ … ≥ a_d ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianPShape {
    pub p: u64,
    pub exps: Vec<u32>,
}

impl AbelianPShape {
    /// Normalizes the exponent list (sorted non-increasing). Zero entries
    /// are rejected rather than dropped.
    pub fn new(p: u64, mut exps: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if exps.contains(&0) {
            return Err(Error::Domain("elementary divisor exponents must be >= 1".into()));
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { p, exps })
    }

    pub fn trivial(p: u64) -> Result<Self> {
        Self::new(p, Vec::new())
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.is_empty()
    }

    /// log_p of the exponent.
    pub fn exponent(&self) -> u32 {
        self.exps.first().copied().unwrap_or(0)
    }

    pub fn rank(&self) -> usize {
        self.exps.len()
    }

    /// log_p |A|
    pub fn order_log(&self) -> u64 {
        self.exps.iter().map(|&a| a as u64).sum()
    }

    /// `M_A = (a_1 + … + a_d)/d`, and 0 for the trivial group.
    pub fn mean_exponent(&self) -> Ratio<u64> {
        if self.is_trivial() {
            return Ratio::from_integer(0);
        }
        Ratio::new(self.order_log(), self.rank() as u64)
    }
}

pub fn mean_exponent(a: &AbelianPShape) -> Ratio<u64> {
    a.mean_exponent()
}

pub fn ratio_to_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Iwasawa invariants of `A_S^T` along a Z_p-extension together with the
/// rank data `d_p A(K_n) = s p^n + λ + c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IwasawaParams {
    pub p: u64,
    pub mu: u64,
    pub lambda: u64,
    pub nu: i64,
    pub s: u64,
    pub c: u64,
}

impl IwasawaParams {
    pub fn new(p: u64, mu: u64, lambda: u64, nu: i64, s: u64, c: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if (mu == 0) != (s == 0) {
            return Err(Error::InconsistentParameters(format!(
                "mu = {mu} and s = {s}: mu vanishes exactly when s does"
            )));
        }
        Ok(Self { p, mu, lambda, nu, s, c })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelData {
    pub order_log: i128,
    pub rank: i128,
    pub mean: Ratio<i128>,
}

/// Order, rank and mean exponent at level `n`, from the asymptotic formulas.
pub fn iwasawa_level_data(params: &IwasawaParams, n: u32) -> Result<LevelData> {
    let overflow = || Error::Range(format!("p^n overflows at n = {n}"));
    let pn = (params.p as i128).checked_pow(n).ok_or_else(overflow)?;
    let order_log = (params.mu as i128)
        .checked_mul(pn)
        .and_then(|v| v.checked_add(params.lambda as i128 * n as i128 + params.nu as i128))
        .ok_or_else(overflow)?;
    let rank = (params.s as i128)
        .checked_mul(pn)
        .and_then(|v| v.checked_add(params.lambda as i128 + params.c as i128))
        .ok_or_else(overflow)?;
    if rank <= 0 {
        return Err(Error::InconsistentParameters(format!("rank {rank} at level {n}")));
    }
    if order_log < rank {
        return Err(Error::InconsistentParameters(format!(
            "order log {order_log} below rank {rank} at level {n}"
        )));
    }
    Ok(LevelData {
        order_log,
        rank,
        mean: Ratio::new(order_log, rank),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AsymptoticClass {
    /// `M(K_n) ~ δ log_p [K_n:K]`
    GrowsLog { delta: Ratio<u64> },
    ConstantMuOverS(Ratio<u64>),
    ConstantNuOverC(Ratio<i64>),
}

pub fn iwasawa_asymptotic_class(params: &IwasawaParams) -> Result<AsymptoticClass> {
    if params.mu != 0 {
        return Ok(AsymptoticClass::ConstantMuOverS(Ratio::new(params.mu, params.s)));
    }
    if params.lambda != 0 {
        return Ok(AsymptoticClass::GrowsLog {
            delta: Ratio::new(params.lambda, params.lambda + params.c),
        });
    }
    if params.c == 0 {
        return Err(Error::Degenerate("mu = lambda = c = 0: the groups have rank 0".into()));
    }
    Ok(AsymptoticClass::ConstantNuOverC(Ratio::new(params.nu, params.c as i64)))
}
