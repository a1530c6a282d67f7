//! Rank bounds and infinitude criteria for restricted-ramification towers.
//!
//! Every criterion of the form `x ≥ a + 2√b` is decided with integers:
//! `x − a ≥ 0` and `(x − a)² ≥ 4b`.

use serde::{Deserialize, Serialize};

use crate::arith::tame_local_factor;
use crate::error::{Error, Result};
use crate::fields::{FieldDescriptor, SplitType};

/// One or more places sharing a norm.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Place {
    pub norm: u64,
    pub split_in_base: Option<SplitType>,
    pub count: u32,
}

impl Place {
    pub fn new(norm: u64, count: u32) -> Self {
        Self {
            norm,
            split_in_base: None,
            count,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceSet {
    pub places: Vec<Place>,
}

impl PlaceSet {
    pub fn new(places: Vec<Place>) -> Self {
        Self { places }
    }

    pub fn validate(&self) -> Result<()> {
        for pl in &self.places {
            if pl.norm < 2 || pl.count == 0 {
                return Err(Error::Domain(format!(
                    "place of norm {} with count {}",
                    pl.norm, pl.count
                )));
            }
        }
        Ok(())
    }

    /// Number of places, with multiplicity.
    pub fn size(&self) -> u32 {
        self.places.iter().map(|p| p.count).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    /// `a(S) = Σ a(𝔭)`, using `a*(𝔭)` for norms ≡ 3 mod 4 when `p = 2`
    /// unless the place is flagged as totally split.
    pub fn local_factor_sum(&self, p: u64, split_completely: bool) -> Result<u64> {
        let mut total = 0u64;
        for pl in &self.places {
            total += tame_local_factor(pl.norm, p, split_completely)? as u64 * pl.count as u64;
        }
        Ok(total)
    }

    pub fn intersects(&self, other: &PlaceSet) -> bool {
        // places are identified by norm only, so this is conservative
        self.places
            .iter()
            .any(|a| other.places.iter().any(|b| a.norm == b.norm))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TowerScenario {
    pub p: u64,
    pub base_field: FieldDescriptor,
    pub s: PlaceSet,
    pub t: PlaceSet,
    pub epsilon_linear: Option<f64>,
    pub label: String,
}

impl TowerScenario {
    pub fn validate(&self) -> Result<()> {
        self.s.validate()?;
        self.t.validate()?;
        if self.s.intersects(&self.t) {
            return Err(Error::Domain("S and T share a place".into()));
        }
        for pl in &self.s.places {
            if pl.norm % self.p == 0 {
                return Err(Error::Domain(format!(
                    "S contains a place of norm {} above p = {}",
                    pl.norm, self.p
                )));
            }
        }
        if let Some(e) = self.epsilon_linear {
            if !(e > 0.0) {
                return Err(Error::Domain(format!("epsilon_linear = {e} must be positive")));
            }
        }
        Ok(())
    }

    /// The pinned ε if present, otherwise `|T| − (r1 + r2)` from the split-place bound.
    pub fn linear_growth_epsilon(&self) -> f64 {
        self.epsilon_linear.unwrap_or_else(|| {
            ershov_schmidt_ratio(
                self.t.size() as i64,
                self.base_field.r1 as i64,
                self.base_field.r2 as i64,
            ) as f64
        })
    }
}

/// `x ≥ a + 2√b`, exactly.
pub fn ge_plus_two_sqrt(x: i64, a: i64, b: i64) -> bool {
    if b < 0 {
        return false;
    }
    let diff = x as i128 - a as i128;
    diff >= 0 && diff * diff >= 4 * b as i128
}

/// `d_p G_S^T ≥ |S| − (r1 + r2 + |T| − δ)`
pub fn rank_lower_bound_st(size_s: i64, size_t: i64, r1: i64, r2: i64, delta: i64) -> i64 {
    size_s - (r1 + r2 + size_t - delta)
}

/// Genus-theory lower bound `ρ − 1 − (r1 + r2 − 1 + δ)` for the p-rank of
/// the class group of a cyclic degree p extension of a field with signature (r1, r2).
pub fn genus_rank_bound(rho: i64, r1: i64, r2: i64, delta: i64) -> i64 {
    rho - 1 - (r1 + r2 - 1 + delta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GsVerdict {
    MustBeInfinite,
    Inconclusive,
}

/// Smallest relation count a finite p-group with `d` generators can have: ⌈d²/4⌉.
pub fn gs_finite_requires(d: u64) -> u64 {
    (d * d).div_ceil(4)
}

pub fn gs_verdict(d: u64, r_upper: u64) -> GsVerdict {
    if 4 * r_upper < d * d {
        GsVerdict::MustBeInfinite
    } else {
        GsVerdict::Inconclusive
    }
}

/// Upper bound on `r(G_S^T)`: `d + r1 + r2 − 1 + δ_{S,p} + |T|`.
pub fn shafarevich_relation_upper(d: i64, r1: i64, r2: i64, size_t: i64, delta_sp: i64) -> i64 {
    d + (r1 + r2 - 1 + delta_sp + size_t)
}

/// The T-split criterion for a quadratic extension `K/k` with `ρ` ramified places.
#[allow(clippy::too_many_arguments)]
pub fn tsplit_criterion(
    rho: i64,
    i_t: i64,
    r1k: i64,
    r2k: i64,
    size_tk: i64,
    delta_k: i64,
    r1big: i64,
    r2big: i64,
    size_tbig: i64,
    delta_big: i64,
) -> bool {
    let a = 3 + r1k + r2k + size_tk - 1 + delta_k;
    let b = r1big + r2big + size_tbig + delta_big;
    ge_plus_two_sqrt(rho + i_t, a, b)
}

/// `ρ ≥ 4 + |T_dec| + 2√(3 + |T|)` for a real quadratic base.
pub fn critere_real_quadratic(rho: i64, t_dec: i64, t_total: i64) -> Result<bool> {
    if t_dec > t_total {
        return Err(Error::Domain(format!("|T_dec| = {t_dec} exceeds |T| = {t_total}")));
    }
    Ok(ge_plus_two_sqrt(rho, 4 + t_dec, 3 + t_total))
}

/// Schreier: `d_p Cl(K_n) ≤ (d − 1)[K_n:K] + 1`.
pub fn schreier_upper(d_base: i64, index: i64) -> Result<i64> {
    if d_base < 1 || index < 1 {
        return Err(Error::Domain(format!("d = {d_base}, index = {index}")));
    }
    Ok((d_base - 1) * index + 1)
}

/// Lower bound on `d_p(G_i)/[G:G_i]` for the split-place construction: `t − (r1 + r2)`.
pub fn ershov_schmidt_ratio(t: i64, r1: i64, r2: i64) -> i64 {
    t - (r1 + r2)
}

/// `d_p Cl(K_n) ≥ t[K_n:K] + 1`
pub fn hajir_refined_lower(t: i64, index: i64) -> Result<i64> {
    if t < 1 || index < 1 {
        return Err(Error::Domain(format!("t = {t}, index = {index}")));
    }
    Ok(t * index + 1)
}
