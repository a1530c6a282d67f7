//! Quadratic and biquadratic number fields, described by their quadratic
//! subfields. Discriminants are kept factored so that ramified primes are
//! read off without factoring.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{factor_u64, is_prime, kronecker, PrimePower};
use crate::error::{Error, Result};
use crate::towers::PlaceSet;

/// A nonzero integer stored with its factorization.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FactoredInt {
    pub negative: bool,
    pub factors: BTreeMap<u64, u32>,
}

impl FactoredInt {
    pub fn one() -> Self {
        Self::default()
    }

    /// Product of the given signed factors. Each entry is factored by trial
    /// division, so entries should be small (primes, 8, -1, ...).
    pub fn from_factors(entries: &[i64]) -> Result<Self> {
        let mut out = Self::one();
        for &e in entries {
            if e == 0 {
                return Err(Error::Domain("zero factor".into()));
            }
            if e < 0 {
                out.negative = !out.negative;
            }
            for (p, k) in factor_u64(e.unsigned_abs()) {
                *out.factors.entry(p).or_insert(0) += k;
            }
        }
        Ok(out)
    }

    pub fn from_u64(n: u64) -> Result<Self> {
        Self::from_factors(&[i64::try_from(n).map_err(|_| Error::Range(format!("{n}")))?])
    }

    pub fn value(&self) -> BigInt {
        let mut v = BigInt::one();
        for (&p, &e) in &self.factors {
            v *= BigInt::from(p).pow(e);
        }
        if self.negative {
            -v
        } else {
            v
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            negative: false,
            factors: self.factors.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.negative ^= other.negative;
        for (&p, &e) in &other.factors {
            *out.factors.entry(p).or_insert(0) += e;
        }
        out
    }

    /// Squarefree part, keeping the sign.
    pub fn squarefree_core(&self) -> Self {
        Self {
            negative: self.negative,
            factors: self
                .factors
                .iter()
                .filter(|(_, &e)| e % 2 == 1)
                .map(|(&p, _)| (p, 1))
                .collect(),
        }
    }

    pub fn ln_abs(&self) -> f64 {
        self.factors
            .iter()
            .map(|(&p, &e)| e as f64 * (p as f64).ln())
            .sum()
    }

    pub fn log_base(&self, p: u64) -> f64 {
        self.ln_abs() / (p as f64).ln()
    }

    pub fn divides_by(&self, p: u64) -> bool {
        self.factors.contains_key(&p)
    }

    /// Residue of the value modulo a small positive modulus.
    pub fn rem_u64(&self, m: u64) -> u64 {
        let mut r = 1u128 % m as u128;
        for (&p, &e) in &self.factors {
            for _ in 0..e {
                r = r * (p as u128 % m as u128) % m as u128;
            }
        }
        let r = r as u64;
        if self.negative && r != 0 {
            m - r
        } else {
            r
        }
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.factors.is_empty()
    }
}

impl fmt::Display for FactoredInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
}

/// A quadratic field `Q(√d)`, stored by the squarefree core of `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticSpec {
    pub core: FactoredInt,
    pub disc: FactoredInt,
}

impl QuadraticSpec {
    pub fn new(radicand: &FactoredInt) -> Result<Self> {
        let core = radicand.squarefree_core();
        if core.is_one() {
            return Err(Error::Domain(format!(
                "radicand {radicand} is a square; Q(√d) is not quadratic"
            )));
        }
        let disc = fundamental_discriminant(&core)?;
        Ok(Self { core, disc })
    }

    pub fn from_factors(entries: &[i64]) -> Result<Self> {
        Self::new(&FactoredInt::from_factors(entries)?)
    }

    pub fn is_real(&self) -> bool {
        !self.core.negative
    }

    pub fn splitting_type(&self, ell: u64) -> Result<SplitType> {
        if self.disc.divides_by(ell) {
            return Ok(SplitType::Ramified);
        }
        let d = self.disc.value();
        match kronecker(&d, &BigInt::from(ell))? {
            1 => Ok(SplitType::Split),
            -1 => Ok(SplitType::Inert),
            _ => Err(Error::Internal(format!("kronecker({d}, {ell}) vanished off the discriminant"))),
        }
    }
}

/// Fundamental discriminant of `Q(√r)`: the squarefree core `d` when
/// `d ≡ 1 mod 4`, otherwise `4d`.
pub fn fundamental_discriminant(radicand: &FactoredInt) -> Result<FactoredInt> {
    let core = radicand.squarefree_core();
    if core.is_one() {
        return Err(Error::Domain(format!("radicand {radicand} has trivial squarefree core")));
    }
    if core.rem_u64(4) == 1 {
        Ok(core)
    } else {
        Ok(core.mul(&FactoredInt::from_factors(&[4])?))
    }
}

/// Integer-valued convenience for [`fundamental_discriminant`].
pub fn fundamental_discriminant_i64(radicand: i64) -> Result<BigInt> {
    if radicand == 0 || radicand == 1 {
        return Err(Error::Domain(format!("radicand {radicand}")));
    }
    Ok(fundamental_discriminant(&FactoredInt::from_factors(&[radicand])?)?.value())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FieldShape {
    Rational,
    Quadratic(QuadraticSpec),
    /// The three quadratic subfields; the third is determined by the first two.
    Biquadratic([QuadraticSpec; 3]),
}

/// Ramification index, residue degree and number of primes above a rational prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decomposition {
    pub e: u32,
    pub f: u32,
    pub g: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub degree: u32,
    pub r1: u32,
    pub r2: u32,
    pub abs_disc: FactoredInt,
    pub label: String,
    pub shape: FieldShape,
}

impl FieldDescriptor {
    pub fn rational() -> Self {
        Self {
            degree: 1,
            r1: 1,
            r2: 0,
            abs_disc: FactoredInt::one(),
            label: "Q".into(),
            shape: FieldShape::Rational,
        }
    }

    pub fn quadratic(spec: QuadraticSpec) -> Self {
        let (r1, r2) = if spec.is_real() { (2, 0) } else { (0, 1) };
        Self {
            degree: 2,
            r1,
            r2,
            abs_disc: spec.disc.abs(),
            label: format!("Q(sqrt({}))", spec.core),
            shape: FieldShape::Quadratic(spec),
        }
    }

    pub fn quadratic_from_factors(entries: &[i64]) -> Result<Self> {
        Ok(Self::quadratic(QuadraticSpec::from_factors(entries)?))
    }

    /// Whether the field contains the p-th roots of unity.
    pub fn delta(&self, p: u64) -> u32 {
        if p == 2 {
            return 1;
        }
        let has_minus_three = |q: &QuadraticSpec| {
            q.core.negative && q.core.factors.len() == 1 && q.core.factors.contains_key(&3)
        };
        match (&self.shape, p) {
            (FieldShape::Quadratic(q), 3) => has_minus_three(q) as u32,
            (FieldShape::Biquadratic(qs), 3) => qs.iter().any(has_minus_three) as u32,
            _ => 0,
        }
    }

    /// `g = log √|disc|`.
    pub fn genus(&self) -> f64 {
        0.5 * self.abs_disc.ln_abs()
    }

    pub fn root_discriminant(&self) -> f64 {
        (self.abs_disc.ln_abs() / self.degree as f64).exp()
    }

    pub fn quadratic_subfields(&self) -> &[QuadraticSpec] {
        match &self.shape {
            FieldShape::Rational => &[],
            FieldShape::Quadratic(q) => std::slice::from_ref(q),
            FieldShape::Biquadratic(qs) => qs,
        }
    }

    /// Splitting of a rational prime, derived from the quadratic subfields.
    pub fn decomposition(&self, ell: u64) -> Result<Decomposition> {
        if !is_prime(ell) {
            return Err(Error::Domain(format!("{ell} is not prime")));
        }
        let d = |e, f, g| Decomposition { e, f, g };
        match &self.shape {
            FieldShape::Rational => Ok(d(1, 1, 1)),
            FieldShape::Quadratic(q) => Ok(match q.splitting_type(ell)? {
                SplitType::Split => d(1, 1, 2),
                SplitType::Inert => d(1, 2, 1),
                SplitType::Ramified => d(2, 1, 1),
            }),
            FieldShape::Biquadratic(qs) => {
                let types = qs
                    .iter()
                    .map(|q| q.splitting_type(ell))
                    .collect::<Result<Vec<_>>>()?;
                let ramified = types.iter().filter(|t| **t == SplitType::Ramified).count();
                match ramified {
                    0 => {
                        if types.iter().all(|t| *t == SplitType::Split) {
                            Ok(d(1, 1, 4))
                        } else {
                            Ok(d(1, 2, 2))
                        }
                    }
                    2 => {
                        let unram = types.iter().find(|t| **t != SplitType::Ramified).unwrap();
                        if *unram == SplitType::Split {
                            Ok(d(2, 1, 2))
                        } else {
                            Ok(d(2, 2, 1))
                        }
                    }
                    3 => Ok(d(4, 1, 1)),
                    _ => Err(Error::Internal(format!(
                        "{ell} ramifies in exactly one quadratic subfield"
                    ))),
                }
            }
        }
    }

    pub fn splitting_type(&self, ell: u64) -> Result<SplitType> {
        match &self.shape {
            FieldShape::Quadratic(q) => q.splitting_type(ell),
            _ => Err(Error::Domain("splitting_type needs a quadratic field".into())),
        }
    }

    /// Norms of the primes above each rational prime `ell <= bound`, with the
    /// number of primes of that norm, sorted by norm.
    pub fn enumerate_norms(&self, bound: u64) -> Result<Vec<(PrimePower, u32)>> {
        if let FieldShape::Rational = self.shape {
            return Err(Error::NotImplemented("norm enumeration over Q".into()));
        }
        if bound < 2 {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for ell in crate::arith::sieve_primes(bound)? {
            let dec = self.decomposition(ell)?;
            out.push((PrimePower::new(ell, dec.f)?, dec.g));
        }
        out.sort_by_key(|(q, _)| q.value);
        Ok(out)
    }
}

/// The compositum `Q(√d1, √d2)`.
pub fn biquadratic_field(d1: &FactoredInt, d2: &FactoredInt) -> Result<FieldDescriptor> {
    let k1 = QuadraticSpec::new(d1)?;
    let k2 = QuadraticSpec::new(d2)?;
    if k1.core == k2.core {
        return Err(Error::Degenerate(format!(
            "Q(√{}) and Q(√{}) are the same field",
            d1, d2
        )));
    }
    let k3 = QuadraticSpec::new(&k1.core.mul(&k2.core))?;
    let abs_disc = k1.disc.mul(&k2.disc).mul(&k3.disc).abs();
    let (r1, r2) = if k1.is_real() && k2.is_real() { (4, 0) } else { (0, 2) };
    Ok(FieldDescriptor {
        degree: 4,
        r1,
        r2,
        abs_disc,
        label: format!("Q(sqrt({}), sqrt({}))", k1.core, k2.core),
        shape: FieldShape::Biquadratic([k1, k2, k3]),
    })
}

pub fn biquadratic_from_factors(d1: &[i64], d2: &[i64]) -> Result<FieldDescriptor> {
    biquadratic_field(&FactoredInt::from_factors(d1)?, &FactoredInt::from_factors(d2)?)
}

/// `disc(K,S) = |disc K| · ∏_{𝔭∈S} N𝔭`; every place of `S` must be prime to `p`.
pub fn disc_with_tame_conductor(
    field: &FieldDescriptor,
    s: &PlaceSet,
    p: u64,
) -> Result<FactoredInt> {
    let mut out = field.abs_disc.clone();
    for place in &s.places {
        if place.norm.gcd(&p) != 1 {
            return Err(Error::Domain(format!(
                "place of norm {} lies above {p}; S must be tame",
                place.norm
            )));
        }
        let norm = FactoredInt::from_u64(place.norm)?;
        for _ in 0..place.count {
            out = out.mul(&norm);
        }
    }
    Ok(out)
}

/// Number of places of `k` ramified in `k(√r)/k`. For `p = 2` the real
/// places of `k` that become complex are included.
pub fn ramified_place_count(k: &FieldDescriptor, radicand: &FactoredInt, p: u64) -> Result<u32> {
    if p != 2 {
        return Err(Error::NotImplemented(
            "ramified places for cyclic extensions of odd degree".into(),
        ));
    }
    let r = QuadraticSpec::new(radicand)?;
    match &k.shape {
        FieldShape::Rational => {
            let finite = r.disc.factors.len() as u32;
            let arch = if r.is_real() { 0 } else { 1 };
            Ok(finite + arch)
        }
        FieldShape::Quadratic(kq) => {
            let big = biquadratic_field(&kq.core, &r.core)?;
            let mut primes: Vec<u64> = kq.disc.factors.keys().copied().collect();
            primes.extend(r.disc.factors.keys().copied());
            primes.sort_unstable();
            primes.dedup();
            let mut count = 0;
            for ell in primes {
                let below = k.decomposition(ell)?;
                let above = big.decomposition(ell)?;
                if above.e == 2 * below.e {
                    count += below.g;
                }
            }
            if kq.is_real() && !r.is_real() || kq.is_real() && !big_is_real(&big) {
                count += 2;
            }
            Ok(count)
        }
        FieldShape::Biquadratic(_) => Err(Error::NotImplemented(
            "quadratic extensions of biquadratic fields".into(),
        )),
    }
}

fn big_is_real(f: &FieldDescriptor) -> bool {
    f.r2 == 0
}
