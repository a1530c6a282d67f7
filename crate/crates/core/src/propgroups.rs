//! Poincaré series of finitely presented pro-p groups and the ranks `b_i`
//! of the Zassenhaus filtration quotients.
//!
//! Two independent routes give the ranks. `zassenhaus_ranks` matches the
//! product `∏ ((1 − T^{pi})/(1 − T^i))^{b_i}` against the series order by
//! order. `zassenhaus_ranks_log` goes through the logarithmic derivative:
//! with `L_m = m [T^m] log U` and `F(m) = Σ_{i|m} i b_i` one has
//! `F(m) = L_m + p F(m/p)` (the second term only when `p | m`), and Möbius
//! inversion recovers `m b_m`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, ln_bigint};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GSGroupParams {
    pub d: u64,
    pub r: u64,
    pub p: u64,
    /// Degrees of the `r` relations; empty means all of degree 2.
    pub relation_degrees: Vec<u32>,
}

impl GSGroupParams {
    pub fn new(d: u64, r: u64, p: u64) -> Result<Self> {
        Self::with_degrees(d, r, p, Vec::new())
    }

    pub fn with_degrees(d: u64, r: u64, p: u64, relation_degrees: Vec<u32>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Domain("generator rank must be >= 1".into()));
        }
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if !relation_degrees.is_empty() && relation_degrees.len() as u64 != r {
            return Err(Error::InconsistentParameters(format!(
                "{} relation degrees given for r = {r}",
                relation_degrees.len()
            )));
        }
        if relation_degrees.iter().any(|&a| a < 2) {
            return Err(Error::Domain("relation degrees must be >= 2".into()));
        }
        Ok(Self { d, r, p, relation_degrees })
    }

    pub fn degrees(&self) -> Vec<u32> {
        if self.relation_degrees.is_empty() {
            vec![2; self.r as usize]
        } else {
            self.relation_degrees.clone()
        }
    }

    pub fn is_quadratic(&self) -> bool {
        self.relation_degrees.iter().all(|&a| a == 2)
    }

    /// Quadratic relations with `d² ≥ 4r` and `r ≥ d`.
    pub fn is_gs_typical(&self) -> bool {
        self.is_quadratic() && self.d * self.d >= 4 * self.r && self.r >= self.d
    }

    /// Coefficients `q_0 … q_N` of `1 − dT + Σ T^{a_i}`.
    fn denominator(&self, n: usize) -> Vec<BigInt> {
        let mut q = vec![BigInt::zero(); n + 1];
        q[0] = BigInt::one();
        if n >= 1 {
            q[1] = -BigInt::from(self.d);
        }
        for a in self.degrees() {
            if (a as usize) <= n {
                q[a as usize] += 1;
            }
        }
        q
    }
}

/// `c_0 … c_N` of `1/(1 − dT + Σ T^{a_i})`.
pub fn gs_series(params: &GSGroupParams, n: usize) -> Result<Vec<BigInt>> {
    let q = params.denominator(n);
    let mut c = vec![BigInt::zero(); n + 1];
    c[0] = BigInt::one();
    for k in 1..=n {
        let mut acc = BigInt::zero();
        for j in 1..=k {
            if !q[j].is_zero() {
                acc -= &q[j] * &c[k - j];
            }
        }
        if acc.is_negative() {
            return Err(Error::InvalidSeries { index: k });
        }
        c[k] = acc;
    }
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZassenhausRanks {
    pub p: u64,
    /// `b[0]` is `b_1`.
    pub b: Vec<BigInt>,
}

impl ZassenhausRanks {
    /// `b_i`, 1-based.
    pub fn get(&self, i: usize) -> Option<&BigInt> {
        i.checked_sub(1).and_then(|k| self.b.get(k))
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }
}

fn binomial(n: &BigInt, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Multiplies `series` in place by `((1 − T^{pi})/(1 − T^i))^b`, truncated.
fn mul_factor(series: &mut [BigInt], p: u64, i: usize, b: &BigInt) {
    if b.is_zero() {
        return;
    }
    let n = series.len() - 1;
    // (1 − T^i)^{−b} = Σ_j C(b + j − 1, j) T^{ij}
    let mut out = vec![BigInt::zero(); n + 1];
    let mut coeff = BigInt::one();
    for j in 0..=n / i {
        if j > 0 {
            coeff = coeff * (b + (j - 1)) / j;
        }
        for k in 0..=n - i * j {
            if !series[k].is_zero() {
                out[k + i * j] += &coeff * &series[k];
            }
        }
    }
    // (1 − T^{pi})^b
    let step = (p as usize).saturating_mul(i);
    if step <= n {
        let mut res = out.clone();
        let mut j = 1;
        while step * j <= n {
            let mut c = binomial(b, j);
            if j % 2 == 1 {
                c = -c;
            }
            if !c.is_zero() {
                for k in 0..=n - step * j {
                    if !out[k].is_zero() {
                        res[k + step * j] += &c * &out[k];
                    }
                }
            }
            j += 1;
        }
        out = res;
    }
    series.clone_from_slice(&out);
}

/// Product matching: `b_i` is the gap at `T^i` between the series and the
/// product of the factors for `b_1 … b_{i−1}`.
pub fn zassenhaus_ranks(series: &[BigInt], p: u64, n: usize) -> Result<ZassenhausRanks> {
    if series.first() != Some(&BigInt::one()) {
        return Err(Error::Domain("series must start with c_0 = 1".into()));
    }
    if series.len() <= n {
        return Err(Error::Range(format!(
            "series known to order {}, ranks requested to {n}",
            series.len() - 1
        )));
    }
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let mut prod = vec![BigInt::zero(); n + 1];
    prod[0] = BigInt::one();
    let mut b = Vec::with_capacity(n);
    for i in 1..=n {
        let bi = &series[i] - &prod[i];
        if bi.is_negative() {
            return Err(Error::InconsistentParameters(format!(
                "b_{i} = {bi} is negative"
            )));
        }
        mul_factor(&mut prod, p, i, &bi);
        b.push(bi);
    }
    Ok(ZassenhausRanks { p, b })
}

/// The product `∏_{i ≤ N} ((1 − T^{pi})/(1 − T^i))^{b_i}` to order `N`.
pub fn reconstruct_series(ranks: &ZassenhausRanks, n: usize) -> Vec<BigInt> {
    let mut prod = vec![BigInt::zero(); n + 1];
    prod[0] = BigInt::one();
    for (k, bi) in ranks.b.iter().enumerate().take(n) {
        mul_factor(&mut prod, ranks.p, k + 1, bi);
    }
    prod
}

/// `L_m = m [T^m] log U` for `U = 1/Q`, from Newton's identities.
pub fn log_power_sums(params: &GSGroupParams, n: usize) -> Vec<BigInt> {
    let q = params.denominator(n);
    // M_m = m [T^m] log Q = m q_m − Σ_{k=1}^{m−1} q_k M_{m−k}
    let mut m_coef = vec![BigInt::zero(); n + 1];
    for m in 1..=n {
        let mut acc = &q[m] * m;
        for k in 1..m {
            if !q[k].is_zero() {
                acc -= &q[k] * &m_coef[m - k];
            }
        }
        m_coef[m] = acc;
    }
    m_coef.into_iter().map(|x| -x).collect()
}

fn mobius_table(n: usize) -> Vec<i8> {
    let mut mu = vec![1i8; n + 1];
    let mut is_comp = vec![false; n + 1];
    for i in 2..=n {
        if !is_comp[i] {
            for j in (i..=n).step_by(i) {
                if j > i {
                    is_comp[j] = true;
                }
                mu[j] = -mu[j];
            }
            let sq = i.saturating_mul(i);
            if sq <= n {
                for j in (sq..=n).step_by(sq) {
                    mu[j] = 0;
                }
            }
        }
    }
    mu
}

/// Ranks through power sums and Möbius inversion. Valid for every `p`.
pub fn zassenhaus_ranks_log(params: &GSGroupParams, n: usize) -> Result<ZassenhausRanks> {
    let l = log_power_sums(params, n);
    let p = params.p as usize;
    let mut f = vec![BigInt::zero(); n + 1];
    for m in 1..=n {
        f[m] = if m % p == 0 { &l[m] + &f[m / p] * p } else { l[m].clone() };
    }
    let mu = mobius_table(n);
    let mut b = Vec::with_capacity(n);
    for m in 1..=n {
        let mut acc = BigInt::zero();
        let mut e = 1;
        while e * e <= m {
            if m % e == 0 {
                let o = m / e;
                match mu[o] {
                    1 => acc += &f[e],
                    -1 => acc -= &f[e],
                    _ => {}
                }
                if o != e {
                    match mu[e] {
                        1 => acc += &f[o],
                        -1 => acc -= &f[o],
                        _ => {}
                    }
                }
            }
            e += 1;
        }
        let (bm, rem) = acc.div_rem(&BigInt::from(m));
        if !rem.is_zero() {
            return Err(Error::Internal(format!("m b_m not divisible by m at m = {m}")));
        }
        if bm.is_negative() {
            return Err(Error::InconsistentParameters(format!("b_{m} = {bm} is negative")));
        }
        b.push(bm);
    }
    Ok(ZassenhausRanks { p: params.p, b })
}

/// `s_m = α^m + β^m` via `s_m = d s_{m−1} − r s_{m−2}`, `s_0 = 2`, `s_1 = d`.
pub fn power_sums(d: u64, r: u64, n: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::from(2)];
    if n >= 1 {
        s.push(BigInt::from(d));
    }
    for m in 2..=n {
        let next = &s[m - 1] * d - &s[m - 2] * r;
        s.push(next);
    }
    s
}

fn require_quadratic(params: &GSGroupParams) -> Result<()> {
    if !params.is_quadratic() {
        return Err(Error::Inapplicable("power sums need all relations of degree 2".into()));
    }
    Ok(())
}

/// Checks `s_m = Σ_{i|m} i b_i` for `p ∤ m`.
pub fn power_sum_check(params: &GSGroupParams, m: usize, ranks: &ZassenhausRanks) -> Result<bool> {
    require_quadratic(params)?;
    if m == 0 {
        return Err(Error::Domain("m must be >= 1".into()));
    }
    if m as u64 % params.p == 0 {
        return Err(Error::Inapplicable(format!("p = {} divides m = {m}", params.p)));
    }
    if ranks.len() < m {
        return Err(Error::Range(format!("ranks known to {}, need {m}", ranks.len())));
    }
    let s = power_sums(params.d, params.r, m);
    let mut sum = BigInt::zero();
    for i in (1..=m).filter(|i| m % i == 0) {
        sum += ranks.get(i).unwrap() * i;
    }
    Ok(sum == s[m])
}

/// `b_{2^n} = (s_{2^n} − s_{2^{n−1}})/2^n` for odd `p`.
pub fn b_power_of_two(params: &GSGroupParams, n: u32) -> Result<BigInt> {
    require_quadratic(params)?;
    if params.p == 2 {
        return Err(Error::Inapplicable("the power-of-two formula needs p odd".into()));
    }
    if n == 0 {
        return Ok(BigInt::from(params.d));
    }
    let top = 1usize << n;
    let s = power_sums(params.d, params.r, top);
    let (q, rem) = (&s[top] - &s[top / 2]).div_rem(&BigInt::from(top));
    if !rem.is_zero() {
        return Err(Error::Internal(format!("s_{top} − s_{} not divisible by {top}", top / 2)));
    }
    Ok(q)
}

/// `i_n = log_p [G : D_{2^n}] = Σ_{i < 2^n} b_i`
pub fn index_log(ranks: &ZassenhausRanks, n: u32) -> Result<BigInt> {
    let hi = (1usize << n) - 1;
    if ranks.len() < hi {
        return Err(Error::Range(format!("need b_1 … b_{hi}, have {}", ranks.len())));
    }
    Ok(ranks.b[..hi].iter().sum())
}

/// `log_p |D_{2^n}/D_{2^{n+1}}| = Σ_{2^n ≤ i < 2^{n+1}} b_i`
pub fn window_rank(ranks: &ZassenhausRanks, n: u32) -> Result<BigInt> {
    let lo = 1usize << n;
    let hi = (1usize << (n + 1)) - 1;
    if ranks.len() < hi {
        return Err(Error::Range(format!("need b_1 … b_{hi}, have {}", ranks.len())));
    }
    Ok(ranks.b[lo - 1..hi].iter().sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Exact,
    LogFloat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessRow {
    pub n: u32,
    /// Decimal strings in the exact regime.
    pub index_log: Option<String>,
    pub window_rank: Option<String>,
    pub ln_index_log: f64,
    pub ln_window_rank: f64,
    /// `ln` of `index_log^{2−ε}`
    pub ln_rhs: f64,
    pub satisfied: bool,
    pub regime: Regime,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub d: u64,
    pub r: u64,
    pub p: u64,
    pub epsilon: f64,
    pub gs_typical: bool,
    pub rows: Vec<WitnessRow>,
}

/// Largest index computed exactly in `theo2_witnesses`.
pub const EXACT_LIMIT: usize = 4096;
/// Rows beyond this level would need more than 2^25 float terms.
pub const MAX_WITNESS_LEVEL: u32 = 24;

fn ln_or_neg_inf(x: &BigInt) -> f64 {
    if x.is_zero() {
        f64::NEG_INFINITY
    } else {
        ln_bigint(x)
    }
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// For each `n ≤ N`, whether `window_rank(n) ≥ index_log(n)^{2−ε}`.
///
/// Rows with `2^{n+1} ≤ 4096` use exact ranks. Later rows use
/// `b_i ≈ (α^i + β^i)/i`, whose relative error is far below 1e−6 once
/// `i > 4096`; these rows are only produced for quadratic relations with
/// real roots (`d² ≥ 4r`).
pub fn theo2_witnesses(params: &GSGroupParams, epsilon: f64, n_max: u32) -> Result<WitnessReport> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Domain(format!("epsilon = {epsilon} must lie in (0, 1)")));
    }
    if n_max > MAX_WITNESS_LEVEL {
        return Err(Error::Range(format!("N = {n_max} exceeds {MAX_WITNESS_LEVEL}")));
    }
    let exact_top = (1usize << (n_max + 1)).min(EXACT_LIMIT) - 1;
    let ranks = zassenhaus_ranks_log(params, exact_top)?;
    let mut rows = Vec::new();
    let mut n = 0;
    while n <= n_max && (1usize << (n + 1)) <= EXACT_LIMIT {
        let idx = index_log(&ranks, n)?;
        let win = window_rank(&ranks, n)?;
        let ln_i = ln_or_neg_inf(&idx);
        let ln_w = ln_or_neg_inf(&win);
        let ln_rhs = (2.0 - epsilon) * ln_i;
        rows.push(WitnessRow {
            n,
            index_log: Some(idx.to_string()),
            window_rank: Some(win.to_string()),
            ln_index_log: ln_i,
            ln_window_rank: ln_w,
            ln_rhs,
            satisfied: ln_w >= ln_rhs,
            regime: Regime::Exact,
        });
        n += 1;
    }
    if n <= n_max && params.is_quadratic() && params.d * params.d >= 4 * params.r {
        let disc = (params.d * params.d - 4 * params.r) as f64;
        let alpha = (params.d as f64 + disc.sqrt()) / 2.0;
        let beta = (params.d as f64 - disc.sqrt()) / 2.0;
        let ln_alpha = alpha.ln();
        let ratio = beta / alpha;
        let ln_b = |i: usize| -> f64 {
            i as f64 * ln_alpha + (1.0 + ratio.powi(i as i32)).ln() - (i as f64).ln()
        };
        // prefix through index 2^n − 1, starting from the exact part
        let start = 1usize << n;
        let mut ln_prefix = ln_or_neg_inf(&index_log(&ranks, n)?);
        while n <= n_max {
            let lo = 1usize << n;
            let hi = 1usize << (n + 1);
            debug_assert!(lo >= start);
            let mut ln_win = f64::NEG_INFINITY;
            for i in lo..hi {
                ln_win = log_add(ln_win, ln_b(i));
            }
            let ln_rhs = (2.0 - epsilon) * ln_prefix;
            rows.push(WitnessRow {
                n,
                index_log: None,
                window_rank: None,
                ln_index_log: ln_prefix,
                ln_window_rank: ln_win,
                ln_rhs,
                satisfied: ln_win >= ln_rhs,
                regime: Regime::LogFloat,
            });
            ln_prefix = log_add(ln_prefix, ln_win);
            n += 1;
        }
    }
    Ok(WitnessReport {
        d: params.d,
        r: params.r,
        p: params.p,
        epsilon,
        gs_typical: params.is_gs_typical(),
        rows,
    })
}

/// For a uniform group of dimension `d`: `M ≥ n`, with `log_p [G:G_n] = d n`.
pub fn uniform_lower(d: u64, n: u64) -> Result<(f64, u64)> {
    if d == 0 || n == 0 {
        return Err(Error::Domain(format!("d = {d}, n = {n}")));
    }
    Ok((n as f64, d * n))
}

/// `M_{U^ab} ≤ C [G:U]`
pub fn prop_theo1_bound(c: f64, index: u64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::Domain(format!("C = {c} must be positive")));
    }
    Ok(c * index as f64)
}

/// Ranks as machine integers where they fit, for display.
pub fn ranks_to_u64(ranks: &ZassenhausRanks) -> Vec<Option<u64>> {
    ranks.b.iter().map(|b| b.to_u64()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn series_examples() {
        let g = GSGroupParams::new(4, 4, 3).unwrap();
        assert_eq!(gs_series(&g, 4).unwrap(), ints(&[1, 4, 12, 32, 80]));
        let g = GSGroupParams::new(2, 1, 3).unwrap();
        assert_eq!(gs_series(&g, 3).unwrap(), ints(&[1, 2, 3, 4]));
        let g = GSGroupParams::new(1, 0, 3).unwrap();
        assert_eq!(gs_series(&g, 3).unwrap(), ints(&[1, 1, 1, 1]));
        let g = GSGroupParams::new(1, 1, 3).unwrap();
        assert!(matches!(gs_series(&g, 5), Err(Error::InvalidSeries { index: 3 })));
        assert!(GSGroupParams::with_degrees(3, 2, 3, vec![2]).is_err());
        assert!(GSGroupParams::with_degrees(3, 1, 3, vec![1]).is_err());
    }

    #[test]
    fn ranks_examples() {
        let g = GSGroupParams::new(4, 4, 3).unwrap();
        let c = gs_series(&g, 8).unwrap();
        let r = zassenhaus_ranks(&c, 3, 8).unwrap();
        assert_eq!(&r.b[..4], &ints(&[4, 2, 8, 6])[..]);
        assert_eq!(zassenhaus_ranks_log(&g, 8).unwrap(), r);

        let r5 = zassenhaus_ranks(&c, 5, 8).unwrap();
        assert_eq!(r5.b[2], BigInt::from(4));

        // p beyond N: factors (1 − T^i)^{−b_i}, the Witt-type formula
        let big = zassenhaus_ranks(&c, 101, 8).unwrap();
        let g101 = GSGroupParams::new(4, 4, 101).unwrap();
        assert_eq!(zassenhaus_ranks_log(&g101, 8).unwrap(), big);

        assert!(zassenhaus_ranks(&ints(&[2, 1]), 3, 1).is_err());
        assert!(zassenhaus_ranks(&ints(&[1, 1]), 3, 4).is_err());
        assert!(matches!(
            zassenhaus_ranks(&ints(&[1, 3, 1]), 3, 2),
            Err(Error::InconsistentParameters(_))
        ));
    }

    #[test]
    fn first_rank_is_generator_count() {
        for d in 1..8u64 {
            let c: Vec<BigInt> = vec![BigInt::one(), BigInt::from(d), BigInt::from(d * d)];
            assert_eq!(zassenhaus_ranks(&c, 3, 1).unwrap().b[0], BigInt::from(d));
        }
    }

    #[test]
    fn degenerate_double_root() {
        let g = GSGroupParams::new(2, 1, 3).unwrap();
        let s = power_sums(2, 1, 8);
        assert!(s.iter().all(|x| *x == BigInt::from(2)));
        assert_eq!(b_power_of_two(&g, 1).unwrap(), BigInt::zero());
        let r = zassenhaus_ranks_log(&g, 27).unwrap();
        for (k, b) in r.b.iter().enumerate() {
            let i = k + 1;
            let want = if [1, 3, 9, 27].contains(&i) { 2 } else { 0 };
            assert_eq!(*b, BigInt::from(want), "b_{i}");
        }
    }

    #[test]
    fn power_sum_examples() {
        let g = GSGroupParams::new(4, 4, 3).unwrap();
        assert_eq!(power_sums(4, 4, 4), ints(&[2, 4, 8, 16, 32]));
        let r = zassenhaus_ranks(&gs_series(&g, 8).unwrap(), 3, 8).unwrap();
        assert!(power_sum_check(&g, 2, &r).unwrap());
        assert!(matches!(power_sum_check(&g, 3, &r), Err(Error::Inapplicable(_))));

        let g5 = GSGroupParams::new(4, 4, 5).unwrap();
        let r5 = zassenhaus_ranks(&gs_series(&g5, 8).unwrap(), 5, 8).unwrap();
        assert!(power_sum_check(&g5, 3, &r5).unwrap());
        // with the p = 3 ranks the m = 3 identity genuinely fails
        let s3 = &power_sums(4, 4, 3)[3];
        assert_ne!(&r.b[0] + &r.b[2] * 3, *s3);
    }

    #[test]
    fn power_of_two_examples() {
        let g = GSGroupParams::new(4, 4, 3).unwrap();
        assert_eq!(b_power_of_two(&g, 1).unwrap(), BigInt::from(2));
        assert_eq!(b_power_of_two(&g, 2).unwrap(), BigInt::from(6));
        let g2 = GSGroupParams::new(4, 4, 2).unwrap();
        assert!(matches!(b_power_of_two(&g2, 1), Err(Error::Inapplicable(_))));
    }

    #[test]
    fn windows() {
        let g = GSGroupParams::new(4, 4, 3).unwrap();
        let r = zassenhaus_ranks_log(&g, 15).unwrap();
        assert_eq!(index_log(&r, 0).unwrap(), BigInt::zero());
        assert_eq!(index_log(&r, 1).unwrap(), BigInt::from(4));
        assert_eq!(window_rank(&r, 1).unwrap(), BigInt::from(10));
        for n in 0..3 {
            assert_eq!(
                window_rank(&r, n).unwrap(),
                index_log(&r, n + 1).unwrap() - index_log(&r, n).unwrap()
            );
        }
        assert!(window_rank(&r, 3).is_ok());
        assert!(window_rank(&r, 4).is_err());
    }

    #[test]
    fn witnesses() {
        let g = GSGroupParams::new(4, 4, 3).unwrap();
        let rep = theo2_witnesses(&g, 0.5, 6).unwrap();
        assert_eq!(rep.rows.len(), 7);
        assert!(rep.gs_typical);
        assert!(rep.rows.iter().any(|r| r.satisfied));
        assert!(rep.rows.iter().all(|r| r.regime == Regime::Exact));

        let flat = GSGroupParams::new(2, 1, 3).unwrap();
        let rep = theo2_witnesses(&flat, 0.5, 4).unwrap();
        assert!(!rep.gs_typical);

        assert!(theo2_witnesses(&g, 1.0, 3).is_err());
        assert!(theo2_witnesses(&g, 0.5, 30).is_err());
    }

    #[test]
    fn witness_regimes_agree_at_the_seam() {
        // level 10 is the last exact row; recompute it with the float formula
        let g = GSGroupParams::new(5, 6, 3).unwrap();
        let rep = theo2_witnesses(&g, 0.3, 13).unwrap();
        assert_eq!(rep.rows[11].regime, Regime::Exact);
        assert_eq!(rep.rows[12].regime, Regime::LogFloat);
        let alpha: f64 = 3.0;
        let beta: f64 = 2.0;
        let n = 11u32;
        let mut approx = f64::NEG_INFINITY;
        for i in (1usize << n)..(1usize << (n + 1)) {
            let t = i as f64 * alpha.ln() + (1.0 + (beta / alpha).powi(i as i32)).ln() - (i as f64).ln();
            approx = log_add(approx, t);
        }
        let exact = rep.rows[11].ln_window_rank;
        assert!(((approx - exact) / exact).abs() < 1e-6);
        // the float prefix continues the exact one
        let next = &rep.rows[12];
        let want = log_add(rep.rows[11].ln_index_log, rep.rows[11].ln_window_rank);
        assert!(((next.ln_index_log - want) / want).abs() < 1e-12);
    }

    #[test]
    fn uniform_and_theo1() {
        assert_eq!(uniform_lower(2, 3).unwrap(), (3.0, 6));
        assert_eq!(uniform_lower(1, 1).unwrap(), (1.0, 1));
        assert!(uniform_lower(0, 1).is_err());
        assert_eq!(prop_theo1_bound(2.5, 8).unwrap(), 20.0);
        assert_eq!(prop_theo1_bound(2.5, 1).unwrap(), 2.5);
        assert!(prop_theo1_bound(0.0, 1).is_err());
    }

    #[test]
    fn general_degrees_agree() {
        let g = GSGroupParams::with_degrees(4, 3, 3, vec![2, 3, 3]).unwrap();
        let c = gs_series(&g, 20).unwrap();
        let a = zassenhaus_ranks(&c, 3, 20).unwrap();
        let b = zassenhaus_ranks_log(&g, 20).unwrap();
        assert_eq!(a, b);
        assert_eq!(reconstruct_series(&a, 20), c);
    }
}
