//! Elementary number theory: primes, residue symbols, valuations and the
//! tame local factors attached to primes away from `p`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SEGMENT: u64 = 1 << 15;

/// A prime power `ell^m` with `m >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    pub ell: u64,
    pub m: u32,
    pub value: u64,
}

impl PrimePower {
    pub fn new(ell: u64, m: u32) -> Result<Self> {
        if !is_prime(ell) {
            return Err(Error::Domain(format!("{ell} is not prime")));
        }
        if m == 0 {
            return Err(Error::Domain("prime power exponent must be >= 1".into()));
        }
        let value = ell
            .checked_pow(m)
            .ok_or_else(|| Error::Range(format!("{ell}^{m} overflows u64")))?;
        Ok(Self { ell, m, value })
    }

    /// Decompose `q` as a prime power, if it is one.
    pub fn from_value(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::Domain(format!("{q} is not a prime power")));
        }
        let f = factor_u64(q);
        match f.as_slice() {
            [(ell, m)] => Self::new(*ell, *m),
            _ => Err(Error::Domain(format!("{q} is not a prime power"))),
        }
    }
}

/// All primes in `[2, limit]`, ascending. Segmented sieve of Eratosthenes.
pub fn sieve_primes(limit: u64) -> Result<Vec<u64>> {
    if limit < 2 {
        return Err(Error::EmptyRange(limit));
    }
    let root = (limit as f64).sqrt() as u64 + 1;
    let mut small = vec![true; (root + 1) as usize];
    small[0] = false;
    if root >= 1 {
        small[1] = false;
    }
    let mut i = 2usize;
    while i * i <= root as usize {
        if small[i] {
            let mut j = i * i;
            while j <= root as usize {
                small[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    let base: Vec<u64> = (2..=root).filter(|&k| small[k as usize]).collect();

    let mut primes = Vec::new();
    let mut lo = 2u64;
    while lo <= limit {
        let hi = (lo + SEGMENT - 1).min(limit);
        let mut seg = vec![true; (hi - lo + 1) as usize];
        for &q in &base {
            if q * q > hi {
                break;
            }
            let start = (q * q).max(lo.div_ceil(q) * q);
            let mut k = start;
            while k <= hi {
                seg[(k - lo) as usize] = false;
                k += q;
            }
        }
        primes.extend(
            seg.iter()
                .enumerate()
                .filter(|(_, &keep)| keep)
                .map(|(off, _)| lo + off as u64),
        );
        lo = hi + 1;
    }
    Ok(primes)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Trial-division factorization; inputs in this crate are small or pre-factored.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Kronecker symbol `(a|n)`.
pub fn kronecker(a: &BigInt, n: &BigInt) -> Result<i8> {
    if n.is_zero() {
        return Err(Error::Domain("kronecker symbol with n = 0".into()));
    }
    let mut a = a.clone();
    let mut n = n.clone();
    let mut t: i8 = 1;

    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            t = -t;
        }
    }
    // Strip factors of two from n, each contributing (a|2).
    let twos = n.trailing_zeros().unwrap_or(0);
    if twos > 0 {
        if a.is_even() {
            return Ok(0);
        }
        n >>= twos;
        let a8 = a.mod_floor(&BigInt::from(8)).to_u8().unwrap_or(0);
        if twos % 2 == 1 && (a8 == 3 || a8 == 5) {
            t = -t;
        }
    }
    // n is now odd and positive: Jacobi symbol.
    a = a.mod_floor(&n);
    while !a.is_zero() {
        let z = a.trailing_zeros().unwrap_or(0);
        if z > 0 {
            a >>= z;
            let n8 = (&n % 8u32).to_u8().unwrap_or(0);
            if z % 2 == 1 && (n8 == 3 || n8 == 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        let a4 = (&a % 4u32).to_u8().unwrap_or(0);
        let n4 = (&n % 4u32).to_u8().unwrap_or(0);
        if a4 == 3 && n4 == 3 {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    Ok(if n.is_one() { t } else { 0 })
}

/// Convenience wrapper for machine integers.
pub fn kronecker_i64(a: i64, n: i64) -> Result<i8> {
    kronecker(&BigInt::from(a), &BigInt::from(n))
}

/// p-adic valuation of a nonzero integer.
pub fn vp(n: &BigInt, p: u64) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::Domain("valuation of zero".into()));
    }
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let p = BigInt::from(p);
    let mut m = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Ok(e);
        }
        m = q;
        e += 1;
    }
}

pub fn vp_u64(n: u64, p: u64) -> Result<u32> {
    vp(&BigInt::from(n), p)
}

/// The exponent `a(𝔭)` bounding the tame inertia contribution of a prime of
/// norm `norm` in a p-extension (`a*(𝔭)` for p = 2 and norm ≡ 3 mod 4).
pub fn tame_local_factor(norm: u64, p: u64, split_completely: bool) -> Result<u32> {
    if norm.gcd(&p) != 1 {
        return Err(Error::Domain(format!("norm {norm} is not prime to {p}")));
    }
    if norm < 2 {
        return Err(Error::Domain(format!("norm {norm} is not a prime power")));
    }
    let a = vp_u64(norm - 1, p)?;
    if p != 2 || norm % 4 == 1 || split_completely {
        return Ok(a);
    }
    // norm = 1 + 2n with n odd
    let n = (norm - 1) / 2;
    Ok(vp_u64(n + 1, 2)? + 1)
}

/// Natural log of a big integer without overflowing f64.
pub fn ln_bigint(x: &BigInt) -> f64 {
    let (sign, mag) = (x.sign(), x.magnitude());
    assert!(sign == Sign::Plus, "ln of non-positive integer");
    let bits = mag.bits();
    if bits <= 1000 {
        return mag.to_f64().unwrap().ln();
    }
    let shift = bits - 60;
    let top = (mag >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}
